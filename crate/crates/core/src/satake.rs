//! The space of mod-p Satake parameters with a fixed central character.
//!
//! Each swap orbit `gamma` with `gamma|_{F_p^x} = zeta|_{F_p^x}` contributes a
//! component: two affine lines crossing at the origin (`x y = 0`) when
//! `gamma` is regular, a single line with coordinate `z1` otherwise. The
//! coordinate `z2` is fixed to `zeta(p^{-1})` throughout.

use serde::Serialize;
use std::fmt;

use crate::chars::{basic_shift, orbit_of, restrict, CentralChar, OrbitGamma, Parity, TorusChar};
use crate::gf::{FieldCtx, FieldElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Crossed,
    Line,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Coords {
    /// A point of `x y = 0`; `x` belongs to the line of `chi`, `y` to `chi^s`.
    Regular { x: FieldElement, y: FieldElement },
    /// Coordinate on a non-regular component.
    Steinberg { z1: FieldElement },
}

/// A Satake parameter. For regular points `chi` names which line `x` lives on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SatakePoint {
    pub chi: TorusChar,
    pub z2: FieldElement,
    #[serde(flatten)]
    pub coords: Coords,
}

impl SatakePoint {
    pub fn gamma(&self) -> OrbitGamma {
        orbit_of(self.chi)
    }

    pub fn is_origin(&self, ctx: &FieldCtx) -> bool {
        match &self.coords {
            Coords::Regular { x, y } => ctx.is_zero(x) && ctx.is_zero(y),
            Coords::Steinberg { z1 } => ctx.is_zero(z1),
        }
    }

    /// Same point written with `chi` replaced by `chi^s`.
    pub fn swapped(&self) -> Self {
        match &self.coords {
            Coords::Regular { x, y } => SatakePoint {
                chi: self.chi.swap(),
                z2: self.z2.clone(),
                coords: Coords::Regular {
                    x: y.clone(),
                    y: x.clone(),
                },
            },
            Coords::Steinberg { .. } => self.clone(),
        }
    }

    /// Representative with `chi` the orbit's canonical member.
    pub fn canonical(&self) -> Self {
        if self.chi == self.gamma().rep {
            self.clone()
        } else {
            self.swapped()
        }
    }

    /// Written so that `chi` is `first` (which must lie in the same orbit).
    pub fn oriented(&self, first: TorusChar) -> Self {
        if self.chi == first {
            self.clone()
        } else {
            debug_assert_eq!(self.chi.swap(), first);
            self.swapped()
        }
    }

    pub fn same_as(&self, other: &SatakePoint) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn embed(&self, into: &FieldCtx, from: &FieldCtx) -> Self {
        SatakePoint {
            chi: self.chi,
            z2: into.embed_from(from, &self.z2),
            coords: match &self.coords {
                Coords::Regular { x, y } => Coords::Regular {
                    x: into.embed_from(from, x),
                    y: into.embed_from(from, y),
                },
                Coords::Steinberg { z1 } => Coords::Steinberg {
                    z1: into.embed_from(from, z1),
                },
            },
        }
    }

    /// Coordinate invariant: `x y = 0` on regular components.
    pub fn is_valid(&self, ctx: &FieldCtx) -> bool {
        match &self.coords {
            Coords::Regular { x, y } => self.chi.is_regular() && ctx.is_zero(&ctx.mul(x, y)),
            Coords::Steinberg { .. } => !self.chi.is_regular(),
        }
    }
}

/// Action of `(omega^r, z0)`: scales `x, y, z1` by `z0` and `z2` by `z0^2`.
pub fn twist_point(ctx: &FieldCtx, v: &SatakePoint, r: i64, z0: &FieldElement) -> SatakePoint {
    SatakePoint {
        chi: v.chi.twist(ctx.p(), r),
        z2: ctx.mul(&ctx.square(z0), &v.z2),
        coords: match &v.coords {
            Coords::Regular { x, y } => Coords::Regular {
                x: ctx.mul(z0, x),
                y: ctx.mul(z0, y),
            },
            Coords::Steinberg { z1 } => Coords::Steinberg {
                z1: ctx.mul(z0, z1),
            },
        },
    }
}

/// `(gamma|_{F_p^x}, z2)`.
pub fn theta(p: u32, v: &SatakePoint) -> (u32, FieldElement) {
    (restrict(p, v.gamma()), v.z2.clone())
}

#[derive(Debug, Clone, Serialize)]
pub struct SatakeComponent {
    pub index: usize,
    pub gamma: OrbitGamma,
    pub shape: Shape,
    /// The ordered pair `(chi, chi^s)`; `x` is the coordinate on the line of `chi`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ordering: Option<(TorusChar, TorusChar)>,
    pub z2: FieldElement,
    /// Position `k` in the chain construction (`chi_k` for regular components;
    /// `0` and `(p-1)/2` for the two non-regular even ones).
    pub chain_index: usize,
}

impl SatakeComponent {
    /// The character whose line carries `x` (or the non-regular character).
    pub fn first(&self) -> TorusChar {
        self.ordering.map_or(self.gamma.rep, |(a, _)| a)
    }

    pub fn origin(&self, ctx: &FieldCtx) -> SatakePoint {
        SatakePoint {
            chi: self.first(),
            z2: self.z2.clone(),
            coords: self.coords_at(ctx, 0, None),
        }
    }

    fn coords_at(&self, ctx: &FieldCtx, which: u8, value: Option<&FieldElement>) -> Coords {
        let v = value.cloned().unwrap_or_else(|| ctx.zero());
        match (self.shape, which) {
            (Shape::Line, _) => Coords::Steinberg { z1: v },
            (Shape::Crossed, 1) => Coords::Regular {
                x: ctx.zero(),
                y: v,
            },
            (Shape::Crossed, _) => Coords::Regular {
                x: v,
                y: ctx.zero(),
            },
        }
    }

    pub fn point_x(&self, ctx: &FieldCtx, x: &FieldElement) -> SatakePoint {
        SatakePoint {
            chi: self.first(),
            z2: self.z2.clone(),
            coords: self.coords_at(ctx, 0, Some(x)),
        }
    }

    pub fn point_y(&self, ctx: &FieldCtx, y: &FieldElement) -> SatakePoint {
        SatakePoint {
            chi: self.first(),
            z2: self.z2.clone(),
            coords: self.coords_at(ctx, 1, Some(y)),
        }
    }

    pub fn point_z1(&self, ctx: &FieldCtx, z1: &FieldElement) -> SatakePoint {
        SatakePoint {
            chi: self.first(),
            z2: self.z2.clone(),
            coords: self.coords_at(ctx, 0, Some(z1)),
        }
    }

    pub fn point_count(&self, order: u128) -> u128 {
        match self.shape {
            Shape::Crossed => 2 * order - 1,
            Shape::Line => order,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SatakeSpace {
    #[serde(skip)]
    pub ctx: FieldCtx,
    pub zeta: CentralChar,
    pub parity: Parity,
    /// `zeta omega^{2 shift}` has basic restriction; components are the basic
    /// ones twisted by `omega^{-shift}`.
    pub shift: u32,
    pub components: Vec<SatakeComponent>,
}

/// Components of the basic space of a parity, as `(k, ordered pair)`.
fn basic_components(p: u32, parity: Parity) -> Vec<(usize, TorusChar, Option<TorusChar>)> {
    let h = ((p - 1) / 2) as i64;
    let mut out = Vec::new();
    match parity {
        Parity::Even => {
            out.push((0, TorusChar::new(p, 0, 0), None));
            out.push((h as usize, TorusChar::new(p, h, h), None));
            for k in 1..h {
                let chi = TorusChar::new(p, k, -k);
                out.push((k as usize, chi, Some(chi.swap())));
            }
        }
        Parity::Odd => {
            for k in 1..=h {
                let chi = TorusChar::new(p, k - 1, -k);
                out.push((k as usize, chi, Some(chi.swap())));
            }
        }
    }
    out
}

pub fn build_space(ctx: &FieldCtx, zeta: &CentralChar) -> SatakeSpace {
    let p = ctx.p();
    let (parity, shift) = basic_shift(p, zeta.c);
    let mut comps: Vec<SatakeComponent> = basic_components(p, parity)
        .into_iter()
        .map(|(k, chi, second)| {
            let first = chi.twist(p, -(shift as i64));
            let ordering = second.map(|s| (first, s.twist(p, -(shift as i64))));
            SatakeComponent {
                index: 0,
                gamma: orbit_of(first),
                shape: if ordering.is_some() {
                    Shape::Crossed
                } else {
                    Shape::Line
                },
                ordering,
                z2: zeta.v.clone(),
                chain_index: k,
            }
        })
        .collect();
    comps.sort_by_key(|c| (c.gamma.regular, c.gamma.rep));
    for (i, c) in comps.iter_mut().enumerate() {
        c.index = i;
    }
    SatakeSpace {
        ctx: ctx.clone(),
        zeta: zeta.clone(),
        parity,
        shift,
        components: comps,
    }
}

impl SatakeSpace {
    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    /// The same space over a larger field of the tower.
    pub fn over(&self, into: &FieldCtx) -> SatakeSpace {
        build_space(into, &self.zeta.embed(into, &self.ctx))
    }

    pub fn component_by_chain_index(&self, k: usize) -> Option<&SatakeComponent> {
        self.components.iter().find(|c| c.chain_index == k)
    }

    /// Index of the component containing `v`, if `v` lies in this space.
    pub fn component_of(&self, v: &SatakePoint) -> Option<&SatakeComponent> {
        if v.z2 != self.zeta.v {
            return None;
        }
        self.components.iter().find(|c| c.gamma.contains(v.chi))
    }

    /// `v` rewritten with this space's line ordering.
    pub fn normalize(&self, v: &SatakePoint) -> Option<SatakePoint> {
        let comp = self.component_of(v)?;
        Some(v.oriented(comp.first()))
    }

    pub fn point_count(&self) -> u128 {
        self.components
            .iter()
            .map(|c| c.point_count(self.ctx.order()))
            .sum()
    }

    /// All points over the field, component by component: for a crossed
    /// component the origin, then the `x`-line, then the `y`-line.
    pub fn enumerate_points(&self) -> Vec<SatakePoint> {
        let ctx = &self.ctx;
        let units = ctx.enumerate_units();
        let mut out = Vec::new();
        for comp in &self.components {
            out.push(comp.origin(ctx));
            match comp.shape {
                Shape::Line => out.extend(units.iter().map(|z| comp.point_z1(ctx, z))),
                Shape::Crossed => {
                    out.extend(units.iter().map(|x| comp.point_x(ctx, x)));
                    out.extend(units.iter().map(|y| comp.point_y(ctx, y)));
                }
            }
        }
        out
    }

    /// Name in the `comp-<i>:...` grammar.
    pub fn point_name(&self, v: &SatakePoint) -> String {
        let Some(comp) = self.component_of(v) else {
            return format!("outside:{v:?}");
        };
        let v = v.oriented(comp.first());
        let ctx = &self.ctx;
        let body = match &v.coords {
            Coords::Steinberg { z1 } => format!("z1={z1}"),
            Coords::Regular { x, y } if ctx.is_zero(x) && ctx.is_zero(y) => "origin".to_string(),
            Coords::Regular { x, y } if ctx.is_zero(y) => format!("x={x}"),
            Coords::Regular { y, .. } => format!("y={y}"),
        };
        format!("comp-{}:{body}", comp.index)
    }
}

impl fmt::Display for SatakeComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ordering {
            Some((a, b)) => write!(f, "comp-{} crossed {} | {}", self.index, a, b),
            None => write!(f, "comp-{} line {}", self.index, self.gamma.rep),
        }
    }
}
