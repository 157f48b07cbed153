//! Finite-dimensional modules of the pro-p Iwahori Hecke algebra, recorded by
//! the parameters their generators act through.
//!
//! `M(x, y, z2, chi)` is the regular standard module, `M(z1, z2, chi)` the
//! non-regular one, and `(0, z1)`, `(-1, -z1)` are the two characters of a
//! non-regular component. Only the swap relation
//! `M(x, y, z2, chi) = M(y, x, z2, chi^s)` is used to identify modules.

use serde::Serialize;
use std::fmt;

use crate::chars::{orbit_of, TorusChar};
use crate::gf::{FieldCtx, FieldElement};
use crate::satake::{Coords, SatakePoint};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind")]
pub enum HeckeModule {
    #[serde(rename = "regstd")]
    RegStd {
        x: FieldElement,
        y: FieldElement,
        z2: FieldElement,
        chi: TorusChar,
    },
    #[serde(rename = "nonregstd")]
    NonRegStd {
        z1: FieldElement,
        z2: FieldElement,
        chi: TorusChar,
    },
    /// The character `(eps, c)` with `eps` in `{0, -1}`.
    #[serde(rename = "char")]
    HChar {
        eps: i8,
        c: FieldElement,
        chi: TorusChar,
    },
    #[serde(rename = "ssum")]
    SSum { members: Vec<HeckeModule> },
}

use HeckeModule::*;

impl HeckeModule {
    /// Direct sum, flattened and sorted.
    pub fn sum(parts: impl IntoIterator<Item = HeckeModule>) -> HeckeModule {
        let mut members = Vec::new();
        for m in parts {
            match m.normalized() {
                SSum { members: inner } => members.extend(inner),
                other => members.push(other),
            }
        }
        members.sort();
        SSum { members }
    }

    /// Canonical form: regular modules written on the canonical orbit member,
    /// sums flattened and sorted.
    pub fn normalized(&self) -> HeckeModule {
        match self {
            RegStd { x, y, z2, chi } => {
                let rep = orbit_of(*chi).rep;
                if *chi == rep {
                    self.clone()
                } else {
                    RegStd {
                        x: y.clone(),
                        y: x.clone(),
                        z2: z2.clone(),
                        chi: rep,
                    }
                }
            }
            SSum { members } => HeckeModule::sum(members.iter().cloned()),
            other => other.clone(),
        }
    }

    pub fn chi(&self) -> Option<TorusChar> {
        match self {
            RegStd { chi, .. } | NonRegStd { chi, .. } | HChar { chi, .. } => Some(*chi),
            SSum { .. } => None,
        }
    }

    pub fn z2(&self, ctx: &FieldCtx) -> Option<FieldElement> {
        match self {
            RegStd { z2, .. } | NonRegStd { z2, .. } => Some(z2.clone()),
            HChar { c, .. } => Some(ctx.square(c)),
            SSum { .. } => None,
        }
    }

    pub fn is_simple(&self, ctx: &FieldCtx) -> bool {
        match self {
            RegStd { .. } | HChar { .. } => true,
            NonRegStd { z1, z2, .. } => ctx.square(z1) != *z2,
            SSum { members } => members.len() == 1 && members[0].is_simple(ctx),
        }
    }

    pub fn is_supersingular(&self, ctx: &FieldCtx) -> bool {
        match self {
            RegStd { x, y, .. } => ctx.is_zero(x) && ctx.is_zero(y),
            NonRegStd { z1, .. } => ctx.is_zero(z1),
            HChar { .. } => false,
            SSum { members } => members.iter().all(|m| m.is_supersingular(ctx)),
        }
    }

    /// Number of simple constituents.
    pub fn length(&self, ctx: &FieldCtx) -> usize {
        match semisimplify(ctx, self) {
            SSum { members } => members.len(),
            _ => unreachable!(),
        }
    }

    pub fn members(&self) -> Vec<HeckeModule> {
        match self.normalized() {
            SSum { members } => members,
            other => vec![other],
        }
    }
}

impl fmt::Display for HeckeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegStd { x, y, z2, chi } => write!(f, "M({x},{y},{z2},{chi})"),
            NonRegStd { z1, z2, chi } => write!(f, "M({z1},{z2},{chi})"),
            HChar { eps, c, chi } => write!(f, "({eps},{c})@{chi}"),
            SSum { members } => {
                let parts: Vec<String> = members.iter().map(|m| m.to_string()).collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// The antispherical module at a Satake parameter.
pub fn asph(v: &SatakePoint) -> HeckeModule {
    match &v.coords {
        Coords::Regular { x, y } => RegStd {
            x: x.clone(),
            y: y.clone(),
            z2: v.z2.clone(),
            chi: v.chi,
        },
        Coords::Steinberg { z1 } => NonRegStd {
            z1: z1.clone(),
            z2: v.z2.clone(),
            chi: v.chi,
        },
    }
}

/// Inverse of [`asph`] on simple modules and on the two characters.
pub fn asph_preimage(ctx: &FieldCtx, m: &HeckeModule) -> Option<SatakePoint> {
    match m {
        RegStd { x, y, z2, chi } => Some(SatakePoint {
            chi: *chi,
            z2: z2.clone(),
            coords: Coords::Regular {
                x: x.clone(),
                y: y.clone(),
            },
        }),
        NonRegStd { z1, z2, chi } => Some(SatakePoint {
            chi: *chi,
            z2: z2.clone(),
            coords: Coords::Steinberg { z1: z1.clone() },
        }),
        HChar { eps, c, chi } => {
            let z1 = if *eps == 0 { c.clone() } else { ctx.neg(c) };
            Some(SatakePoint {
                chi: *chi,
                z2: ctx.square(&z1),
                coords: Coords::Steinberg { z1 },
            })
        }
        SSum { members } if members.len() == 1 => asph_preimage(ctx, &members[0]),
        SSum { .. } => None,
    }
}

/// Action of `(omega^r, z0)`: `X, Y, U` scale by `z0` and `U^2` by `z0^2`.
pub fn twist_module(ctx: &FieldCtx, m: &HeckeModule, r: i64, z0: &FieldElement) -> HeckeModule {
    let p = ctx.p();
    match m {
        RegStd { x, y, z2, chi } => RegStd {
            x: ctx.mul(z0, x),
            y: ctx.mul(z0, y),
            z2: ctx.mul(&ctx.square(z0), z2),
            chi: chi.twist(p, r),
        },
        NonRegStd { z1, z2, chi } => NonRegStd {
            z1: ctx.mul(z0, z1),
            z2: ctx.mul(&ctx.square(z0), z2),
            chi: chi.twist(p, r),
        },
        HChar { eps, c, chi } => HChar {
            eps: *eps,
            c: ctx.mul(z0, c),
            chi: chi.twist(p, r),
        },
        SSum { members } => HeckeModule::sum(members.iter().map(|x| twist_module(ctx, x, r, z0))),
    }
}

/// Semisimplification, always returned as a sum.
pub fn semisimplify(ctx: &FieldCtx, m: &HeckeModule) -> HeckeModule {
    match m {
        NonRegStd { z1, z2, chi } if ctx.square(z1) == *z2 => HeckeModule::sum([
            HChar {
                eps: 0,
                c: z1.clone(),
                chi: *chi,
            },
            HChar {
                eps: -1,
                c: ctx.neg(z1),
                chi: *chi,
            },
        ]),
        SSum { members } => HeckeModule::sum(members.iter().map(|x| semisimplify(ctx, x))),
        simple => HeckeModule::sum([simple.clone()]),
    }
}

pub fn iso_equal(a: &HeckeModule, b: &HeckeModule) -> bool {
    let collapse = |m: &HeckeModule| match m.normalized() {
        SSum { members } if members.len() == 1 => members[0].clone(),
        other => other,
    };
    collapse(a) == collapse(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::Parity;
    use crate::gf::make_ctx;
    use crate::satake::{build_space, twist_point};

    #[test]
    fn asph_examples() {
        let f5 = make_ctx(5, 1).unwrap();
        let space = build_space(&f5, &Parity::Even.basic_zeta(&f5));
        let comp = space.component_by_chain_index(1).unwrap();
        let chi = TorusChar::new(5, 1, -1);
        let m = asph(&comp.point_x(&f5, &f5.from_int(2)));
        assert_eq!(
            m,
            RegStd {
                x: f5.from_int(2),
                y: f5.zero(),
                z2: f5.one(),
                chi
            }
        );
        let line = space.component_by_chain_index(0).unwrap();
        let m = asph(&line.point_z1(&f5, &f5.from_int(2)));
        assert!(m.is_simple(&f5));
        let m = asph(&line.point_z1(&f5, &f5.one()));
        assert!(!m.is_simple(&f5));
        let chi0 = TorusChar::new(5, 0, 0);
        let expected = HeckeModule::sum([
            HChar {
                eps: 0,
                c: f5.one(),
                chi: chi0,
            },
            HChar {
                eps: -1,
                c: f5.from_int(-1),
                chi: chi0,
            },
        ]);
        assert!(iso_equal(&semisimplify(&f5, &m), &expected));
    }

    #[test]
    fn swap_rule() {
        let f5 = make_ctx(5, 1).unwrap();
        let chi = TorusChar::new(5, 1, 3);
        let x = f5.from_int(2);
        let a = RegStd {
            x: f5.zero(),
            y: x.clone(),
            z2: f5.one(),
            chi: chi.swap(),
        };
        let b = RegStd {
            x: x.clone(),
            y: f5.zero(),
            z2: f5.one(),
            chi,
        };
        assert!(iso_equal(&a, &b));
        let c = RegStd {
            x: f5.from_int(3),
            y: f5.zero(),
            z2: f5.one(),
            chi,
        };
        assert!(!iso_equal(&b, &c));
        let chi0 = TorusChar::new(5, 0, 0);
        let s1 = SSum {
            members: vec![
                HChar {
                    eps: 0,
                    c: f5.one(),
                    chi: chi0,
                },
                HChar {
                    eps: -1,
                    c: f5.from_int(4),
                    chi: chi0,
                },
            ],
        };
        let s2 = SSum {
            members: vec![
                HChar {
                    eps: -1,
                    c: f5.from_int(4),
                    chi: chi0,
                },
                HChar {
                    eps: 0,
                    c: f5.one(),
                    chi: chi0,
                },
            ],
        };
        assert!(iso_equal(&s1, &s2));
    }

    #[test]
    fn twist_examples() {
        let f5 = make_ctx(5, 1).unwrap();
        let chi0 = TorusChar::new(5, 0, 0);
        let m = HChar {
            eps: 0,
            c: f5.from_int(2),
            chi: chi0,
        };
        assert_eq!(twist_module(&f5, &m, 0, &f5.one()), m);
        assert_eq!(
            twist_module(&f5, &m, 1, &f5.from_int(3)),
            HChar {
                eps: 0,
                c: f5.one(),
                chi: TorusChar::new(5, 1, 1)
            }
        );
    }

    #[test]
    fn semisimplify_is_idempotent_and_simple_modules_stay() {
        let f5 = make_ctx(5, 1).unwrap();
        let chi0 = TorusChar::new(5, 0, 0);
        let m = NonRegStd {
            z1: f5.from_int(2),
            z2: f5.one(),
            chi: chi0,
        };
        assert!(iso_equal(&semisimplify(&f5, &m), &m));
        let n = NonRegStd {
            z1: f5.one(),
            z2: f5.one(),
            chi: chi0,
        };
        let once = semisimplify(&f5, &n);
        assert_eq!(semisimplify(&f5, &once), once);
        assert_eq!(once.length(&f5), 2);
    }

    #[test]
    fn asph_is_equivariant_on_seven() {
        let f7 = make_ctx(7, 1).unwrap();
        for parity in [Parity::Even, Parity::Odd] {
            let space = build_space(&f7, &parity.basic_zeta(&f7));
            for v in space.enumerate_points() {
                for r in 0..6 {
                    for z0 in f7.enumerate_units() {
                        let lhs = semisimplify(&f7, &asph(&twist_point(&f7, &v, r, &z0)));
                        let rhs = semisimplify(&f7, &twist_module(&f7, &asph(&v), r, &z0));
                        assert!(iso_equal(&lhs, &rhs));
                    }
                }
            }
        }
    }

    #[test]
    fn supersingular_points_are_told_apart() {
        let f7 = make_ctx(7, 1).unwrap();
        let space = build_space(&f7, &Parity::Even.basic_zeta(&f7));
        let ss: Vec<_> = space
            .components
            .iter()
            .map(|c| asph(&c.origin(&f7)).normalized())
            .collect();
        assert!(ss.iter().all(|m| m.is_supersingular(&f7)));
        let set: std::collections::HashSet<_> = ss.iter().collect();
        assert_eq!(set.len(), ss.len());
    }
}
