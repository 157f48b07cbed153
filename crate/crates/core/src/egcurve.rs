//! The Emerton-Gee chain `X_zeta` as a combinatorial curve.
//!
//! For basic `zeta` the chain is a row of projective lines. In the even case
//! there are `h = (p-1)/2` lines, `h - 1` double points and two further smooth
//! irreducible points at the ends; in the odd case there are `h + 1` lines and
//! `h` double points, and the two end lines carry the trace coordinate `t`.
//! Irreducible points are indexed by `k` (`0..=h` even, `1..=h` odd).
//!
//! A reducible point is stored as `(row, value)` in the row's canonical
//! coordinate:
//!
//! * even row `0`: `z1`, centred at the smooth point `n_0`;
//! * even row `h-1`: `z1`, centred at the smooth point `n_h`;
//! * even interior row `j`: `x`, centred at `n_j` (`n_{j+1}` is `x = inf`);
//! * odd rows `0` and `h`: `t`, with the double point at `t = inf`;
//! * odd interior row `i`: `x`, centred at `m_i`.
//!
//! Curves for other central characters are the basic curve relabelled by a
//! twist `eta0`; their points keep the basic coordinates.

use serde::Serialize;
use std::fmt;

use crate::chars::{reduce_to_basic_normalized, CentralChar, Parity, SmoothChar};
use crate::gf::{FieldCtx, FieldElement, QuadraticRoots};

fn md(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64 - 1) as u32
}

/// `Sym^r (x) det^a`. `r = -1` is the formal placeholder used in labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SerreWeight {
    pub r: i32,
    pub a: u32,
}

impl SerreWeight {
    pub fn new(p: u32, r: i32, a: i64) -> Self {
        SerreWeight { r, a: md(a, p) }
    }

    pub fn is_formal(&self) -> bool {
        self.r < 0
    }

    pub fn twist(self, p: u32, c: u32) -> Self {
        SerreWeight::new(p, self.r, self.a as i64 + c as i64)
    }
}

impl fmt::Display for SerreWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = if self.a == 0 {
            format!("Sym^{}", self.r)
        } else {
            format!("Sym^{}⊗det^{}", self.r, self.a)
        };
        if self.is_formal() {
            write!(f, "\"{body}\"")
        } else {
            f.write_str(&body)
        }
    }
}

fn weight_pair(mut w: [SerreWeight; 2]) -> [SerreWeight; 2] {
    w.sort();
    w
}

/// The two Serre weights `{Sym^r det^a, Sym^{p-1-r} det^{r+a}}` of the
/// irreducible representation `ind(omega_2^{r+1}) (x) omega^a`, `0 <= r <= p-2`.
pub fn irreducible_weights(p: u32, r: u32, a: u32) -> [SerreWeight; 2] {
    let (r, a) = (r as i64, a as i64);
    weight_pair([
        SerreWeight::new(p, r as i32, a),
        SerreWeight::new(p, (p as i64 - 1 - r) as i32, r + a),
    ])
}

/// A semisimple two-dimensional mod-p representation of `Gal(Q_p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GaloisRep {
    /// `chi1 (+) chi2`, kept sorted.
    Reducible { chars: [SmoothChar; 2] },
    /// Irreducible, recorded by its Serre weights and the square of its
    /// unramified twist parameter.
    Irreducible {
        weights: [SerreWeight; 2],
        unr_sq: FieldElement,
    },
}

impl GaloisRep {
    pub fn reducible(a: SmoothChar, b: SmoothChar) -> Self {
        let mut chars = [a, b];
        chars.sort();
        GaloisRep::Reducible { chars }
    }

    pub fn tensor(&self, ctx: &FieldCtx, mu: &SmoothChar) -> GaloisRep {
        let p = ctx.p();
        match self {
            GaloisRep::Reducible { chars } => {
                GaloisRep::reducible(chars[0].mul(ctx, mu), chars[1].mul(ctx, mu))
            }
            GaloisRep::Irreducible { weights, unr_sq } => GaloisRep::Irreducible {
                weights: weight_pair([weights[0].twist(p, mu.c), weights[1].twist(p, mu.c)]),
                unr_sq: ctx.mul(unr_sq, &ctx.square(&mu.v)),
            },
        }
    }

    pub fn det(&self, ctx: &FieldCtx) -> SmoothChar {
        match self {
            GaloisRep::Reducible { chars } => chars[0].mul(ctx, &chars[1]),
            GaloisRep::Irreducible { weights, unr_sq } => {
                let w = weights[0];
                SmoothChar::new(ctx, w.r as i64 + 1 + 2 * w.a as i64, unr_sq.clone())
            }
        }
    }
}

impl fmt::Display for GaloisRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaloisRep::Reducible { chars } => write!(
                f,
                "w^{}·unr-inv({}) + w^{}·unr-inv({})",
                chars[0].c, chars[0].v, chars[1].c, chars[1].v
            ),
            GaloisRep::Irreducible { weights, unr_sq } => {
                write!(f, "irr{{{}, {}}} unr^2={}", weights[0], weights[1], unr_sq)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EGPoint {
    Node { k: usize },
    Red { row: usize, value: FieldElement },
}

impl EGPoint {
    pub fn embed(&self, into: &FieldCtx, from: &FieldCtx) -> EGPoint {
        match self {
            EGPoint::Red { row, value } => EGPoint::Red {
                row: *row,
                value: into.embed_from(from, value),
            },
            node => node.clone(),
        }
    }

    pub fn restrict(&self, from: &FieldCtx, to: &FieldCtx) -> Option<EGPoint> {
        match self {
            EGPoint::Red { row, value } => Some(EGPoint::Red {
                row: *row,
                value: from.restrict_to(to, value)?,
            }),
            node => Some(node.clone()),
        }
    }

    pub fn is_node(&self) -> bool {
        matches!(self, EGPoint::Node { .. })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IrredNode {
    pub k: usize,
    pub weights: [SerreWeight; 2],
    /// The two even-case end points, which lie on a single line.
    pub smooth: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EGComponent {
    pub index: usize,
    pub label: [SerreWeight; 2],
    pub exterior: bool,
    /// Canonical coordinate name: `z1`, `t` or `x`.
    pub coordinate: &'static str,
    /// Irreducible point at coordinate `0`, if any.
    pub at_zero: Option<usize>,
    /// Irreducible point at coordinate `inf`.
    pub at_infinity: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct EGCurve {
    #[serde(skip)]
    pub ctx: FieldCtx,
    pub p: u32,
    pub parity: Parity,
    pub zeta: CentralChar,
    /// Points of this curve are the basic points with representations tensored by `eta0`.
    pub eta0: SmoothChar,
    pub components: Vec<EGComponent>,
    pub nodes: Vec<IrredNode>,
}

/// The basic curve of a parity.
pub fn build_curve(ctx: &FieldCtx, parity: Parity) -> EGCurve {
    let p = ctx.p();
    let h = ((p - 1) / 2) as i64;
    let w = |r: i64, a: i64| SerreWeight::new(p, r as i32, a);
    let mut components = Vec::new();
    let mut nodes = Vec::new();
    match parity {
        Parity::Even => {
            for k in 0..=h {
                nodes.push(IrredNode {
                    k: k as usize,
                    weights: weight_pair([w(2 * k, -k), w(p as i64 - 1 - 2 * k, k)]),
                    smooth: k == 0 || k == h,
                });
            }
            for j in 0..h {
                let exterior = j == 0 || j == h - 1;
                let (at_zero, at_infinity) = if j == h - 1 && j != 0 {
                    (Some(h as usize), (h - 1) as usize)
                } else {
                    (Some(j as usize), (j + 1) as usize)
                };
                components.push(EGComponent {
                    index: j as usize,
                    label: [w(2 * j, -j), w(p as i64 - 3 - 2 * j, j + 1)],
                    exterior,
                    coordinate: if exterior { "z1" } else { "x" },
                    at_zero,
                    at_infinity,
                });
            }
        }
        Parity::Odd => {
            for k in 1..=h {
                nodes.push(IrredNode {
                    k: k as usize,
                    weights: weight_pair([w(2 * k - 1, -k), w(p as i64 - 2 * k, k - 1)]),
                    smooth: false,
                });
            }
            for i in 0..=h {
                let exterior = i == 0 || i == h;
                let (at_zero, at_infinity) = match i {
                    0 => (None, 1),
                    i if i == h => (None, h as usize),
                    i => (Some(i as usize), (i + 1) as usize),
                };
                components.push(EGComponent {
                    index: i as usize,
                    label: [w(p as i64 - 2 - 2 * i, i), w(2 * i - 1, -i)],
                    exterior,
                    coordinate: if exterior { "t" } else { "x" },
                    at_zero,
                    at_infinity,
                });
            }
        }
    }
    EGCurve {
        ctx: ctx.clone(),
        p,
        parity,
        zeta: parity.basic_zeta(ctx),
        eta0: SmoothChar::trivial(ctx),
        components,
        nodes,
    }
}

/// The curve for an arbitrary central character, as a twist of a basic one.
/// Its field is the one `reduce_to_basic` needed.
pub fn curve_for(ctx: &FieldCtx, zeta: &CentralChar) -> EGCurve {
    let red = reduce_to_basic_normalized(ctx, zeta);
    let work = red.ctx.clone();
    let mut curve = build_curve(&work, red.parity);
    let eta0 = red.eta.inv(&work);
    let p = ctx.p();
    for n in &mut curve.nodes {
        n.weights = weight_pair([n.weights[0].twist(p, eta0.c), n.weights[1].twist(p, eta0.c)]);
    }
    for c in &mut curve.components {
        c.label = [c.label[0].twist(p, eta0.c), c.label[1].twist(p, eta0.c)];
    }
    curve.zeta = zeta.embed(&work, ctx);
    curve.eta0 = eta0;
    curve
}

impl EGCurve {
    pub fn h(&self) -> usize {
        ((self.p - 1) / 2) as usize
    }

    pub fn exterior_rows(&self) -> [usize; 2] {
        match self.parity {
            Parity::Even => [0, self.h() - 1],
            Parity::Odd => [0, self.h()],
        }
    }

    pub fn is_exterior(&self, row: usize) -> bool {
        self.exterior_rows().contains(&row)
    }

    pub fn double_points(&self) -> usize {
        self.nodes.iter().filter(|n| !n.smooth).count()
    }

    pub fn node(&self, k: usize) -> Option<&IrredNode> {
        self.nodes.iter().find(|n| n.k == k)
    }

    /// The same curve over a larger field of the tower.
    pub fn over(&self, into: &FieldCtx) -> EGCurve {
        let mut c = self.clone();
        c.zeta = self.zeta.embed(into, &self.ctx);
        c.eta0 = self.eta0.embed(into, &self.ctx);
        c.ctx = into.clone();
        c
    }

    pub fn is_exceptional(&self, ctx: &FieldCtx, pt: &EGPoint) -> bool {
        let EGPoint::Red { row, value } = pt else {
            return false;
        };
        if !self.is_exterior(*row) {
            return false;
        }
        let s = match self.parity {
            Parity::Even => 1,
            Parity::Odd => 2,
        };
        *value == ctx.from_int(s) || *value == ctx.from_int(-s)
    }

    /// The four exceptional points.
    pub fn exceptional_points(&self, ctx: &FieldCtx) -> Vec<EGPoint> {
        let s = match self.parity {
            Parity::Even => 1,
            Parity::Odd => 2,
        };
        self.exterior_rows()
            .iter()
            .flat_map(|&row| {
                [s, -s].map(|v| EGPoint::Red {
                    row,
                    value: ctx.from_int(v),
                })
            })
            .collect()
    }

    fn row_values(&self, ctx: &FieldCtx, row: usize) -> Vec<FieldElement> {
        match self.parity {
            Parity::Odd if self.is_exterior(row) => ctx.enumerate_elements().collect(),
            _ => ctx.enumerate_units(),
        }
    }

    /// Every point over `ctx`: irreducible points first, then row by row.
    pub fn enumerate_points(&self, ctx: &FieldCtx) -> Vec<EGPoint> {
        let mut out: Vec<EGPoint> = self
            .nodes
            .iter()
            .map(|n| EGPoint::Node { k: n.k })
            .collect();
        for comp in &self.components {
            out.extend(
                self.row_values(ctx, comp.index)
                    .into_iter()
                    .map(|value| EGPoint::Red {
                        row: comp.index,
                        value,
                    }),
            );
        }
        out
    }

    pub fn is_valid_point(&self, ctx: &FieldCtx, pt: &EGPoint) -> bool {
        match pt {
            EGPoint::Node { k } => self.node(*k).is_some(),
            EGPoint::Red { row, value } => {
                *row < self.components.len()
                    && (ctx.degree() == value.coeffs().len())
                    && (!ctx.is_zero(value)
                        || (self.parity == Parity::Odd && self.is_exterior(*row)))
            }
        }
    }

    /// Even rows: the coordinate centred at the lower-index irreducible point.
    fn even_left(&self, ctx: &FieldCtx, row: usize, value: &FieldElement) -> FieldElement {
        if row == self.h() - 1 && row != 0 {
            ctx.inv(value)
                .expect("reducible points have nonzero coordinate")
        } else {
            value.clone()
        }
    }

    fn even_canonical(&self, ctx: &FieldCtx, row: usize, left: &FieldElement) -> FieldElement {
        self.even_left(ctx, row, left)
    }

    /// Representation at a point of the basic curve. The second component is
    /// the field it is written in: `ctx`, or its doubling when an odd trace
    /// point has no eigenvalue over `ctx`.
    pub fn basic_rep(&self, ctx: &FieldCtx, pt: &EGPoint) -> (GaloisRep, FieldCtx) {
        match pt {
            EGPoint::Node { k } => {
                let base = build_curve(ctx, self.parity);
                let n = base.node(*k).expect("known irreducible point");
                (
                    GaloisRep::Irreducible {
                        weights: n.weights,
                        unr_sq: ctx.one(),
                    },
                    ctx.clone(),
                )
            }
            EGPoint::Red { row, value } => {
                let row = *row as i64;
                match self.parity {
                    Parity::Even => {
                        let x = self.even_left(ctx, row as usize, value);
                        let xi = ctx.inv(&x).expect("nonzero coordinate");
                        let rep = GaloisRep::reducible(
                            SmoothChar::new(ctx, row + 1, xi),
                            SmoothChar::new(ctx, -row, x),
                        );
                        (rep, ctx.clone())
                    }
                    Parity::Odd if self.is_exterior(row as usize) => {
                        let a = row;
                        let (work, z) = match ctx.solve_quadratic(&ctx.neg(value), &ctx.one()) {
                            QuadraticRoots::Distinct(z, _) | QuadraticRoots::Double(z) => {
                                (ctx.clone(), z)
                            }
                            QuadraticRoots::NeedsExtension { .. } => {
                                let e = ctx.doubled();
                                let t = e.embed_from(ctx, value);
                                let z = e.solve_quadratic(&e.neg(&t), &e.one()).roots()[0].clone();
                                (e, z)
                            }
                        };
                        let zi = work.inv(&z).expect("roots of y^2 - t y + 1 are units");
                        let rep = GaloisRep::reducible(
                            SmoothChar::new(&work, a, zi),
                            SmoothChar::new(&work, a, z),
                        );
                        (rep, work)
                    }
                    Parity::Odd => {
                        let xi = ctx.inv(value).expect("nonzero coordinate");
                        let rep = GaloisRep::reducible(
                            SmoothChar::new(ctx, row, xi),
                            SmoothChar::new(ctx, -row, value.clone()),
                        );
                        (rep, ctx.clone())
                    }
                }
            }
        }
    }

    /// Representation at a point, in `ctx` or its doubling. `ctx` must contain
    /// the curve's field.
    pub fn rep_of_point(&self, ctx: &FieldCtx, pt: &EGPoint) -> (GaloisRep, FieldCtx) {
        let (rep, work) = self.basic_rep(ctx, pt);
        let eta0 = self.eta0.embed(&work, &self.ctx);
        (rep.tensor(&work, &eta0), work)
    }

    /// Point of the basic curve carrying `rep`, written in `ctx`.
    pub fn basic_locate(&self, ctx: &FieldCtx, rep: &GaloisRep) -> Option<EGPoint> {
        let p = self.p;
        let h = self.h() as u32;
        match rep {
            GaloisRep::Irreducible { weights, unr_sq } => {
                if !ctx.is_one(unr_sq) {
                    return None;
                }
                let base = build_curve(ctx, self.parity);
                base.nodes
                    .iter()
                    .find(|n| n.weights == *weights)
                    .map(|n| EGPoint::Node { k: n.k })
            }
            GaloisRep::Reducible { chars } => {
                if rep.det(ctx)
                    != SmoothChar::omega_pow(ctx, 1).mul(ctx, &self.parity.basic_zeta(ctx))
                {
                    return None;
                }
                match self.parity {
                    Parity::Even => {
                        for j in 0..h {
                            if let Some(ch) = chars.iter().find(|ch| ch.c == md(-(j as i64), p)) {
                                let value = self.even_canonical(ctx, j as usize, &ch.v);
                                return Some(EGPoint::Red {
                                    row: j as usize,
                                    value,
                                });
                            }
                        }
                        None
                    }
                    Parity::Odd => {
                        let a = chars[0].c;
                        if a == 0 || a == h {
                            let t = ctx.add(&chars[0].v, &chars[1].v);
                            let row = if a == 0 { 0 } else { h as usize };
                            Some(EGPoint::Red { row, value: t })
                        } else {
                            let i = a.min(p - 1 - a);
                            let ch = chars.iter().find(|ch| ch.c == p - 1 - i)?;
                            Some(EGPoint::Red {
                                row: i as usize,
                                value: ch.v.clone(),
                            })
                        }
                    }
                }
            }
        }
    }

    /// Point of this curve carrying `rep` (written in `ctx`, which contains the curve's field).
    pub fn locate(&self, ctx: &FieldCtx, rep: &GaloisRep) -> Option<EGPoint> {
        let eta0_inv = self.eta0.embed(ctx, &self.ctx).inv(ctx);
        self.basic_locate(ctx, &rep.tensor(ctx, &eta0_inv))
    }

    /// Name in the `node-<k>` / `ext-left:...` / `int-<k>:x=...` grammar.
    pub fn point_name(&self, pt: &EGPoint) -> String {
        match pt {
            EGPoint::Node { k } => format!("node-{k}"),
            EGPoint::Red { row, value } => {
                let comp = &self.components[*row];
                if comp.exterior {
                    let side = if *row == 0 { "left" } else { "right" };
                    format!("ext-{side}:{}={value}", comp.coordinate)
                } else {
                    format!("int-{row}:x={value}")
                }
            }
        }
    }

    /// Graphviz description: irreducible points are vertices, lines are edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph chain {\n  rankdir=LR;\n");
        for n in &self.nodes {
            let shape = if n.smooth { "circle" } else { "doublecircle" };
            out.push_str(&format!(
                "  n{} [shape={shape}, label=\"node-{}\\n{} | {}\"];\n",
                n.k, n.k, n.weights[0], n.weights[1]
            ));
        }
        for c in &self.components {
            let label = format!("{} | {}", c.label[0], c.label[1]).replace('"', "\\\"");
            let exc = if c.exterior {
                "\\nexceptional: ±1 or ±2"
            } else {
                ""
            };
            let (from, to) = match c.at_zero {
                Some(z) => (format!("n{z}"), format!("n{}", c.at_infinity)),
                None => {
                    out.push_str(&format!("  t{} [shape=point];\n", c.index));
                    (format!("t{}", c.index), format!("n{}", c.at_infinity))
                }
            };
            out.push_str(&format!("  {from} -- {to} [label=\"{label}{exc}\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// `pt`, a point of `from`, moved to the curve `to` by tensoring with `mu`.
/// All three live over `ctx`; the answer is written in `ctx`.
pub fn twist_curve(
    ctx: &FieldCtx,
    from: &EGCurve,
    pt: &EGPoint,
    mu: &SmoothChar,
    to: &EGCurve,
) -> Option<EGPoint> {
    let (rep, work) = from.rep_of_point(ctx, pt);
    let mu = mu.embed(&work, ctx);
    let located = to.locate(&work, &rep.tensor(&work, &mu))?;
    located.restrict(&work, ctx)
}
