//! The morphism `L_zeta` from Satake parameters to the Emerton-Gee chain.
//!
//! In the basic cases every line of every component is sent onto a row of the
//! chain. Even: the `x`-line of `chi_k` covers row `k` and its `y`-line row
//! `k-1`, both seen from the double point `n_k`; the two non-regular lines are
//! the exterior `z1`-lines. Odd: the same pattern, except that the `y`-line of
//! `chi_1` and the `x`-line of `chi_h` are folded onto the exterior `t`-lines
//! by `y -> y + 1/y`, with the origin going to `t = inf`.
//!
//! For other central characters `L_zeta(v)` is `L_basic(v . eta)` read on the
//! curve twisted back by `eta^{-1}`, with `eta` from `reduce_to_basic`.

use serde::Serialize;

use crate::chars::{Parity, SmoothChar};
use crate::egcurve::{EGCurve, EGPoint};
use crate::error::Error;
use crate::gf::{FieldCtx, FieldElement, QuadraticRoots};
use crate::satake::{build_space, twist_point, Coords, SatakePoint, SatakeSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceLine {
    X,
    Y,
    Z1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Formula {
    /// Open immersion onto a chart of the target row.
    #[serde(rename = "identity-chart")]
    IdentityChart,
    /// Degree-2 cover `y -> y + 1/y` of an exterior `t`-line.
    #[serde(rename = "y-plus-inverse")]
    YPlusInverse,
}

#[derive(Debug, Clone, Serialize)]
pub struct Piece {
    pub line: SourceLine,
    pub target_row: usize,
    pub formula: Formula,
    /// Irreducible point whose chart the line is read in (`None` for `t`-lines).
    pub chart_at: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentMapDesc {
    pub component: usize,
    pub chain_index: usize,
    /// Irreducible point the origin goes to.
    pub origin_to: usize,
    pub pieces: Vec<Piece>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberPoint {
    pub point: SatakePoint,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberResult {
    pub points: Vec<FiberPoint>,
    pub ramified: bool,
    /// The points are written over the quadratic extension of the curve's field.
    pub extension: bool,
    #[serde(skip)]
    pub ctx: FieldCtx,
}

impl FiberResult {
    pub fn cardinality(&self) -> usize {
        self.points.len()
    }

    /// Points repeated by multiplicity.
    pub fn multiset(&self) -> Vec<SatakePoint> {
        self.points
            .iter()
            .flat_map(|fp| std::iter::repeat_n(fp.point.clone(), fp.multiplicity as usize))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct LMap {
    pub space: SatakeSpace,
    pub curve: EGCurve,
    pub pieces: Vec<ComponentMapDesc>,
    /// `zeta eta^2` is basic.
    pub eta: SmoothChar,
    /// The basic space over the curve's field.
    basic: SatakeSpace,
}

pub fn build_map(space: &SatakeSpace, curve: &EGCurve) -> Result<LMap, Error> {
    if space.parity != curve.parity {
        return Err(Error::ParityMismatch {
            space: space.parity,
            curve: curve.parity,
        });
    }
    let work = curve.ctx.clone();
    if !work.contains_subfield(&space.ctx) || curve.zeta != space.zeta.embed(&work, &space.ctx) {
        return Err(Error::CentralCharMismatch);
    }
    let basic = build_space(&work, &space.parity.basic_zeta(&work));
    let h = curve.h();
    let parity = space.parity;
    let pieces = space
        .components
        .iter()
        .map(|comp| {
            let k = comp.chain_index;
            let id = |line, target_row, chart_at| Piece {
                line,
                target_row,
                formula: Formula::IdentityChart,
                chart_at: Some(chart_at),
            };
            let cover = |line, target_row| Piece {
                line,
                target_row,
                formula: Formula::YPlusInverse,
                chart_at: None,
            };
            let pieces = match (parity, comp.ordering.is_some()) {
                (Parity::Even, false) => {
                    vec![id(SourceLine::Z1, if k == 0 { 0 } else { h - 1 }, k)]
                }
                (Parity::Even, true) => vec![id(SourceLine::X, k, k), id(SourceLine::Y, k - 1, k)],
                (Parity::Odd, _) => vec![
                    if k == h {
                        cover(SourceLine::X, h)
                    } else {
                        id(SourceLine::X, k, k)
                    },
                    if k == 1 {
                        cover(SourceLine::Y, 0)
                    } else {
                        id(SourceLine::Y, k - 1, k)
                    },
                ],
            };
            ComponentMapDesc {
                component: comp.index,
                chain_index: k,
                origin_to: k,
                pieces,
            }
        })
        .collect();
    Ok(LMap {
        space: space.clone(),
        curve: curve.clone(),
        pieces,
        eta: curve.eta0.inv(&work),
        basic,
    })
}

impl LMap {
    pub fn parity(&self) -> Parity {
        self.space.parity
    }

    /// The curve's field; images of `eval` are written here.
    pub fn work_ctx(&self) -> &FieldCtx {
        &self.curve.ctx
    }

    fn h(&self) -> usize {
        self.curve.h()
    }

    fn even_canonical(&self, ctx: &FieldCtx, row: usize, left: &FieldElement) -> FieldElement {
        if row == self.h() - 1 && row != 0 {
            ctx.inv(left).expect("nonzero")
        } else {
            left.clone()
        }
    }

    /// `L` on a point of the basic space written over `ctx`.
    pub fn eval_basic(&self, ctx: &FieldCtx, w: &SatakePoint) -> EGPoint {
        let h = self.h();
        let basic = if *ctx == self.basic.ctx {
            self.basic.clone()
        } else {
            build_space(ctx, &self.parity().basic_zeta(ctx))
        };
        let comp = basic.component_of(w).expect("point of the basic space");
        let k = comp.chain_index;
        let w = w.oriented(comp.first());
        if w.is_origin(ctx) {
            return EGPoint::Node { k };
        }
        let inv = |a: &FieldElement| ctx.inv(a).expect("nonzero");
        let trace = |a: &FieldElement| ctx.add(a, &inv(a));
        match (self.parity(), &w.coords) {
            (Parity::Even, Coords::Steinberg { z1 }) => EGPoint::Red {
                row: if k == 0 { 0 } else { h - 1 },
                value: z1.clone(),
            },
            (Parity::Even, Coords::Regular { x, y }) => {
                if !ctx.is_zero(x) {
                    EGPoint::Red {
                        row: k,
                        value: self.even_canonical(ctx, k, x),
                    }
                } else {
                    EGPoint::Red {
                        row: k - 1,
                        value: self.even_canonical(ctx, k - 1, &inv(y)),
                    }
                }
            }
            (Parity::Odd, Coords::Regular { x, y }) => {
                if !ctx.is_zero(x) {
                    if k == h {
                        EGPoint::Red {
                            row: h,
                            value: trace(x),
                        }
                    } else {
                        EGPoint::Red {
                            row: k,
                            value: x.clone(),
                        }
                    }
                } else if k == 1 {
                    EGPoint::Red {
                        row: 0,
                        value: trace(y),
                    }
                } else {
                    EGPoint::Red {
                        row: k - 1,
                        value: inv(y),
                    }
                }
            }
            (Parity::Odd, Coords::Steinberg { .. }) => {
                unreachable!("odd spaces have no non-regular component")
            }
        }
    }

    /// Moves a point of this space (over `ctx` containing the curve's field) to the basic space.
    pub fn to_basic(&self, ctx: &FieldCtx, v: &SatakePoint) -> SatakePoint {
        let eta = self.eta.embed(ctx, &self.curve.ctx);
        twist_point(ctx, v, eta.c as i64, &eta.v)
    }

    pub fn from_basic(&self, ctx: &FieldCtx, w: &SatakePoint) -> SatakePoint {
        let eta = self.eta.embed(ctx, &self.curve.ctx).inv(ctx);
        twist_point(ctx, w, eta.c as i64, &eta.v)
    }

    /// `L_zeta(v)` for `v` written over `ctx` (a field containing the curve's field).
    pub fn eval_in(&self, ctx: &FieldCtx, v: &SatakePoint) -> EGPoint {
        self.eval_basic(ctx, &self.to_basic(ctx, v))
    }

    /// `L_zeta(v)` for `v` over the space's field; the image is over the curve's field.
    pub fn eval(&self, v: &SatakePoint) -> EGPoint {
        let work = &self.curve.ctx;
        self.eval_in(work, &v.embed(work, &self.space.ctx))
    }

    /// Preimage of a point of the basic curve, over `ctx` or its doubling.
    pub fn fiber_basic(&self, ctx: &FieldCtx, x: &EGPoint) -> FiberResult {
        let h = self.h();
        let parity = self.parity();
        let basic = if *ctx == self.basic.ctx {
            self.basic.clone()
        } else {
            build_space(ctx, &parity.basic_zeta(ctx))
        };
        let comp = |k: usize| {
            basic
                .component_by_chain_index(k)
                .expect("chain index in range")
        };
        let single = |point: SatakePoint| FiberResult {
            points: vec![FiberPoint {
                point,
                multiplicity: 1,
            }],
            ramified: false,
            extension: false,
            ctx: ctx.clone(),
        };
        let pair = |a: SatakePoint, b: SatakePoint| FiberResult {
            points: vec![
                FiberPoint {
                    point: a,
                    multiplicity: 1,
                },
                FiberPoint {
                    point: b,
                    multiplicity: 1,
                },
            ],
            ramified: false,
            extension: false,
            ctx: ctx.clone(),
        };
        let inv = |a: &FieldElement| ctx.inv(a).expect("nonzero");
        match x {
            EGPoint::Node { k } => single(comp(*k).origin(ctx)),
            EGPoint::Red { row, value } => match parity {
                Parity::Even => {
                    let j = *row;
                    let left = self.even_canonical(ctx, j, value);
                    let a = if j == 0 {
                        comp(0).point_z1(ctx, &left)
                    } else {
                        comp(j).point_x(ctx, &left)
                    };
                    let b = if j == h - 1 {
                        comp(h).point_z1(ctx, &inv(&left))
                    } else {
                        comp(j + 1).point_y(ctx, &inv(&left))
                    };
                    pair(a, b)
                }
                Parity::Odd if *row == 0 || *row == h => {
                    let (work, roots, double) =
                        match ctx.solve_quadratic(&ctx.neg(value), &ctx.one()) {
                            QuadraticRoots::NeedsExtension { .. } => {
                                let e = ctx.doubled();
                                let t = e.embed_from(ctx, value);
                                let r = e.solve_quadratic(&e.neg(&t), &e.one());
                                let double = r.is_double();
                                (e, r.roots(), double)
                            }
                            r => (ctx.clone(), r.roots(), r.is_double()),
                        };
                    let space = if work == *ctx {
                        basic.clone()
                    } else {
                        build_space(&work, &parity.basic_zeta(&work))
                    };
                    let c = if *row == 0 {
                        space.component_by_chain_index(1)
                    } else {
                        space.component_by_chain_index(h)
                    }
                    .expect("boundary component");
                    let make = |y: &FieldElement| {
                        if *row == 0 {
                            c.point_y(&work, y)
                        } else {
                            c.point_x(&work, y)
                        }
                    };
                    let points = roots
                        .iter()
                        .map(|y| FiberPoint {
                            point: make(y),
                            multiplicity: if double { 2 } else { 1 },
                        })
                        .collect();
                    FiberResult {
                        points,
                        ramified: double,
                        extension: work != *ctx,
                        ctx: work,
                    }
                }
                Parity::Odd => {
                    let i = *row;
                    pair(
                        comp(i).point_x(ctx, value),
                        comp(i + 1).point_y(ctx, &inv(value)),
                    )
                }
            },
        }
    }

    /// `L_zeta^{-1}(x)` for `x` over `ctx` (containing the curve's field).
    pub fn fiber_in(&self, ctx: &FieldCtx, x: &EGPoint) -> FiberResult {
        let mut res = self.fiber_basic(ctx, x);
        let work = res.ctx.clone();
        for fp in &mut res.points {
            fp.point = self.from_basic(&work, &fp.point);
        }
        res
    }

    pub fn fiber(&self, x: &EGPoint) -> FiberResult {
        self.fiber_in(&self.curve.ctx.clone(), x)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, failures: Vec<String>) -> Check {
        Check {
            name: name.into(),
            pass: failures.is_empty(),
            failures,
        }
    }
}

/// Exhaustive geometric checks of a basic map over its field.
pub fn verify_geometry(map: &LMap) -> Vec<Check> {
    let ctx = map.space.ctx.clone();
    let curve = &map.curve;
    let parity = map.parity();
    let e = ctx.doubled();
    let mut checks = Vec::new();

    // pieces are open immersions or (odd) exactly two quadratic covers
    let covers = map
        .pieces
        .iter()
        .flat_map(|d| &d.pieces)
        .filter(|p| p.formula == Formula::YPlusInverse)
        .count();
    let expected_covers = if parity == Parity::Even { 0 } else { 2 };
    checks.push(Check::new(
        "piece-kinds",
        if covers == expected_covers {
            vec![]
        } else {
            vec![format!("{covers} quadratic pieces")]
        },
    ));

    let mut inj = Vec::new();
    for desc in &map.pieces {
        let comp = &map.space.components[desc.component];
        if map.eval(&comp.origin(&ctx)) != (EGPoint::Node { k: desc.origin_to }) {
            inj.push(format!("origin of comp-{} misplaced", comp.index));
        }
        for piece in &desc.pieces {
            let line: Vec<SatakePoint> = ctx
                .enumerate_units()
                .iter()
                .map(|a| match piece.line {
                    SourceLine::X => comp.point_x(&ctx, a),
                    SourceLine::Y => comp.point_y(&ctx, a),
                    SourceLine::Z1 => comp.point_z1(&ctx, a),
                })
                .collect();
            let image: Vec<EGPoint> = line.iter().map(|v| map.eval(v)).collect();
            if image
                .iter()
                .any(|x| !matches!(x, EGPoint::Red { row, .. } if *row == piece.target_row))
            {
                inj.push(format!(
                    "comp-{} {:?}-line leaves row {}",
                    comp.index, piece.line, piece.target_row
                ));
            }
            let distinct: std::collections::HashSet<_> = image.iter().collect();
            match piece.formula {
                Formula::IdentityChart => {
                    if distinct.len() != line.len() {
                        inj.push(format!(
                            "comp-{} {:?}-line not injective",
                            comp.index, piece.line
                        ));
                    }
                    let row_pts = curve
                        .enumerate_points(&ctx)
                        .into_iter()
                        .filter(
                            |x| matches!(x, EGPoint::Red { row, .. } if *row == piece.target_row),
                        )
                        .count();
                    if distinct.len() != row_pts {
                        inj.push(format!(
                            "comp-{} {:?}-line misses part of row {}",
                            comp.index, piece.line, piece.target_row
                        ));
                    }
                }
                Formula::YPlusInverse => {
                    for (v, x) in line.iter().zip(&image) {
                        let Coords::Regular { x: a, y: b } = &v.coords else {
                            continue;
                        };
                        let y = if ctx.is_zero(a) { b } else { a };
                        let yi = ctx.inv(y).expect("unit");
                        let partner = if ctx.is_zero(a) {
                            comp.point_y(&ctx, &yi)
                        } else {
                            comp.point_x(&ctx, &yi)
                        };
                        if map.eval(&partner) != *x {
                            inj.push(format!("y and 1/y differ at {}", map.space.point_name(v)));
                        }
                        let same = partner == *v;
                        let pm1 = *y == ctx.one() || *y == ctx.from_int(-1);
                        if same != pm1 {
                            inj.push(format!(
                                "sheet swap fixed point wrong at {}",
                                map.space.point_name(v)
                            ));
                        }
                    }
                }
            }
        }
    }
    checks.push(Check::new("open-immersions", inj));

    // surjectivity over the quadratic extension, fiber sizes and shapes
    let mut surj = Vec::new();
    let mut sizes = Vec::new();
    let ecurve = curve.over(&e);
    let emap = build_map(&map.space.over(&e), &ecurve).expect("same data over the extension");
    for x in curve.enumerate_points(&ctx) {
        let fib = map.fiber(&x);
        if fib.points.is_empty() {
            surj.push(format!("{} has empty fiber", curve.point_name(&x)));
            continue;
        }
        let xe = x.embed(&e, &ctx);
        for fp in &fib.points {
            let pe = if fib.ctx == e {
                fp.point.clone()
            } else {
                fp.point.embed(&e, &ctx)
            };
            if emap.eval_in(&e, &pe) != xe {
                surj.push(format!(
                    "{} does not map back to {}",
                    map.space.point_name(&fp.point),
                    curve.point_name(&x)
                ));
            }
        }
        let exceptional = curve.is_exceptional(&ctx, &x);
        let expected = match (&x, parity, exceptional) {
            (EGPoint::Node { .. }, _, _) => (1, false),
            (_, Parity::Odd, true) => (1, true),
            _ => (2, false),
        };
        if (fib.cardinality(), fib.ramified) != expected || fib.cardinality() > 2 {
            sizes.push(format!(
                "{}: {} points, ramified {}",
                curve.point_name(&x),
                fib.cardinality(),
                fib.ramified
            ));
        }
    }
    checks.push(Check::new("surjective", surj));
    checks.push(Check::new("fiber-sizes", sizes));

    // branch locus of the covers: the zeros of t^2 - 4
    let mut branch = Vec::new();
    if parity == Parity::Odd {
        for row in curve.exterior_rows() {
            for t in ctx.enumerate_elements() {
                let disc = ctx.sub(&ctx.square(&t), &ctx.from_int(4));
                let x = EGPoint::Red {
                    row,
                    value: t.clone(),
                };
                let ramified = map.fiber(&x).ramified;
                if ctx.is_zero(&disc) != curve.is_exceptional(&ctx, &x)
                    || ramified != ctx.is_zero(&disc)
                {
                    branch.push(curve.point_name(&x));
                }
            }
        }
    }
    checks.push(Check::new("branch-locus", branch));
    checks
}
