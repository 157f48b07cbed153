//! Smooth representations at the level of their classification data, the
//! semisimple correspondence `rho -> pi(rho)`, `I(1)`-invariants, blocks and
//! the checks tying them to `L_zeta`.
//!
//! A principal series is kept as its inducing pair `Ind(chi1 (x) chi2)`, so
//! `pi(r, x, eta) = Ind(unr(x) eta (x) omega^r unr(1/x) eta)` and the relation
//! `pi(r, x, eta) = pi(r, -x, unr(-1) eta)` holds on the nose.

use serde::Serialize;
use std::fmt;

use crate::chars::{orbit_of, CentralChar, Parity, SmoothChar, TorusChar};
use crate::egcurve::{irreducible_weights, EGPoint, GaloisRep};
use crate::gf::{FieldCtx, FieldElement};
use crate::hecke::{asph, asph_preimage, semisimplify, HeckeModule};
use crate::lmap::{build_map, LMap};
use crate::satake::SatakePoint;

/// An irreducible smooth representation of `GL2(Q_p)` with a central character.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Constituent {
    /// `Ind_B^G(chi1 (x) chi2)` with `chi1 != chi2`.
    PS { chi1: SmoothChar, chi2: SmoothChar },
    /// Supersingular, determined by its component and `U^2`-scalar.
    SS { chi: TorusChar, z2: FieldElement },
    /// `eta o det`.
    Char { eta: SmoothChar },
    /// `St (x) eta o det`.
    St { eta: SmoothChar },
}

impl fmt::Display for Constituent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constituent::PS { chi1, chi2 } => {
                write!(f, "Ind(w^{}:{} ⊗ w^{}:{})", chi1.c, chi1.v, chi2.c, chi2.v)
            }
            Constituent::SS { chi, z2 } => write!(f, "SS{chi} z2={z2}"),
            Constituent::Char { eta } => write!(f, "w^{}:{}∘det", eta.c, eta.v),
            Constituent::St { eta } => write!(f, "St⊗w^{}:{}", eta.c, eta.v),
        }
    }
}

/// `Ind(chi1 (x) chi2)^ss`: irreducible unless `chi1 = chi2`, when it is
/// `chi1 o det + St (x) chi1 o det`.
pub fn induced(chi1: SmoothChar, chi2: SmoothChar) -> Vec<Constituent> {
    if chi1 == chi2 {
        vec![
            Constituent::Char { eta: chi1.clone() },
            Constituent::St { eta: chi1 },
        ]
    } else {
        vec![Constituent::PS { chi1, chi2 }]
    }
}

/// `pi(r, x, eta)^ss`.
pub fn principal_series(
    ctx: &FieldCtx,
    r: i64,
    x: &FieldElement,
    eta: &SmoothChar,
) -> Vec<Constituent> {
    let xi = ctx.inv(x).expect("x is nonzero");
    induced(
        SmoothChar::new(ctx, eta.c as i64, ctx.mul(&eta.v, &xi)),
        SmoothChar::new(ctx, r + eta.c as i64, ctx.mul(&eta.v, x)),
    )
}

/// The supersingular `pi(r, 0, eta)`.
pub fn supersingular(ctx: &FieldCtx, r: i64, eta: &SmoothChar) -> Constituent {
    let chi = TorusChar::new(ctx.p(), r + eta.c as i64, eta.c as i64);
    Constituent::SS {
        chi: orbit_of(chi).rep,
        z2: ctx.square(&eta.v),
    }
}

impl Constituent {
    pub fn central_char(&self, ctx: &FieldCtx) -> CentralChar {
        match self {
            Constituent::PS { chi1, chi2 } => chi1.mul(ctx, chi2),
            Constituent::SS { chi, z2 } => {
                SmoothChar::new(ctx, chi.a as i64 + chi.b as i64, z2.clone())
            }
            Constituent::Char { eta } | Constituent::St { eta } => eta.square(ctx),
        }
    }

    /// `pi (x) (mu o det)`.
    pub fn twist(&self, ctx: &FieldCtx, mu: &SmoothChar) -> Constituent {
        match self {
            Constituent::PS { chi1, chi2 } => Constituent::PS {
                chi1: chi1.mul(ctx, mu),
                chi2: chi2.mul(ctx, mu),
            },
            Constituent::SS { chi, z2 } => Constituent::SS {
                chi: orbit_of(chi.twist(ctx.p(), mu.c as i64)).rep,
                z2: ctx.mul(z2, &ctx.square(&mu.v)),
            },
            Constituent::Char { eta } => Constituent::Char {
                eta: eta.mul(ctx, mu),
            },
            Constituent::St { eta } => Constituent::St {
                eta: eta.mul(ctx, mu),
            },
        }
    }

    pub fn embed(&self, into: &FieldCtx, from: &FieldCtx) -> Constituent {
        match self {
            Constituent::PS { chi1, chi2 } => Constituent::PS {
                chi1: chi1.embed(into, from),
                chi2: chi2.embed(into, from),
            },
            Constituent::SS { chi, z2 } => Constituent::SS {
                chi: *chi,
                z2: into.embed_from(from, z2),
            },
            Constituent::Char { eta } => Constituent::Char {
                eta: eta.embed(into, from),
            },
            Constituent::St { eta } => Constituent::St {
                eta: eta.embed(into, from),
            },
        }
    }
}

/// `pi(rho)`, as a list of constituents with multiplicity.
pub fn pi_of_rho(ctx: &FieldCtx, rho: &GaloisRep) -> Vec<Constituent> {
    match rho {
        GaloisRep::Reducible { chars: [c1, c2] } => {
            let shift = SmoothChar::omega_pow(ctx, -1);
            let mut out = induced(
                SmoothChar {
                    c: c2.c,
                    v: c1.v.clone(),
                },
                SmoothChar {
                    c: c1.c,
                    v: c2.v.clone(),
                }
                .mul(ctx, &shift),
            );
            out.extend(induced(
                SmoothChar {
                    c: c1.c,
                    v: c2.v.clone(),
                },
                SmoothChar {
                    c: c2.c,
                    v: c1.v.clone(),
                }
                .mul(ctx, &shift),
            ));
            out.sort();
            out
        }
        GaloisRep::Irreducible { weights, unr_sq } => {
            let w = weights[0];
            let chi = TorusChar::new(ctx.p(), w.r as i64 + w.a as i64, w.a as i64);
            vec![Constituent::SS {
                chi: orbit_of(chi).rep,
                z2: unr_sq.clone(),
            }]
        }
    }
}

/// Checks `det rho = omega zeta` before computing `pi(rho)`.
pub fn pi_of_rho_checked(
    ctx: &FieldCtx,
    rho: &GaloisRep,
    zeta: &CentralChar,
) -> Option<Vec<Constituent>> {
    (rho.det(ctx) == SmoothChar::omega_pow(ctx, 1).mul(ctx, zeta)).then(|| pi_of_rho(ctx, rho))
}

/// `pi^{I(1)}` as a Hecke module.
pub fn invariants_of(ctx: &FieldCtx, pi: &Constituent) -> HeckeModule {
    match pi {
        Constituent::PS { chi1, chi2 } => {
            let chi = TorusChar {
                a: chi1.c,
                b: chi2.c,
            };
            let z2 = ctx.mul(&chi1.v, &chi2.v);
            if chi.is_regular() {
                HeckeModule::RegStd {
                    x: ctx.zero(),
                    y: chi2.v.clone(),
                    z2,
                    chi,
                }
            } else {
                HeckeModule::NonRegStd {
                    z1: chi2.v.clone(),
                    z2,
                    chi,
                }
            }
        }
        Constituent::SS { chi, z2 } => {
            if chi.is_regular() {
                HeckeModule::RegStd {
                    x: ctx.zero(),
                    y: ctx.zero(),
                    z2: z2.clone(),
                    chi: *chi,
                }
            } else {
                HeckeModule::NonRegStd {
                    z1: ctx.zero(),
                    z2: z2.clone(),
                    chi: *chi,
                }
            }
        }
        Constituent::Char { eta } => HeckeModule::HChar {
            eps: 0,
            c: eta.v.clone(),
            chi: TorusChar { a: eta.c, b: eta.c },
        },
        Constituent::St { eta } => HeckeModule::HChar {
            eps: -1,
            c: ctx.neg(&eta.v),
            chi: TorusChar { a: eta.c, b: eta.c },
        },
    }
}

/// The representation `rho` whose `pi(rho)` has a constituent with
/// invariants `m`. Used for the pointwise description of `L_zeta`.
pub fn rho_of_module(ctx: &FieldCtx, m: &HeckeModule) -> Option<GaloisRep> {
    let p = ctx.p();
    let ss = |chi: TorusChar, z2: &FieldElement| {
        let r = (chi.a + (p - 1) - chi.b) % (p - 1);
        GaloisRep::Irreducible {
            weights: irreducible_weights(p, r, chi.b),
            unr_sq: z2.clone(),
        }
    };
    // Ind(A (x) B) sits in rho = (omega B) + A' with the values exchanged
    let from_ps = |a_c: u32, b_c: u32, b_v: &FieldElement, z2: &FieldElement| {
        let a_v = ctx.div(z2, b_v).ok()?;
        Some(GaloisRep::reducible(
            SmoothChar::new(ctx, b_c as i64 + 1, a_v),
            SmoothChar::new(ctx, a_c as i64, b_v.clone()),
        ))
    };
    match m {
        HeckeModule::RegStd { x, y, z2, chi } => {
            if ctx.is_zero(x) && ctx.is_zero(y) {
                Some(ss(*chi, z2))
            } else if ctx.is_zero(x) {
                from_ps(chi.a, chi.b, y, z2)
            } else if ctx.is_zero(y) {
                from_ps(chi.b, chi.a, x, z2)
            } else {
                None
            }
        }
        HeckeModule::NonRegStd { z1, z2, chi } => {
            if ctx.is_zero(z1) {
                Some(ss(*chi, z2))
            } else {
                from_ps(chi.a, chi.b, z1, z2)
            }
        }
        HeckeModule::HChar { .. } => rho_of_module(ctx, &asph(&asph_preimage(ctx, m)?)),
        HeckeModule::SSum { .. } => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Case {
    #[serde(rename = "i")]
    Irreducible,
    #[serde(rename = "ii")]
    Generic,
    #[serde(rename = "iiie")]
    ExceptionalEven,
    #[serde(rename = "iiio")]
    ExceptionalOdd,
}

impl Case {
    pub fn expected_length(self) -> usize {
        match self {
            Case::Irreducible => 1,
            Case::Generic | Case::ExceptionalOdd => 2,
            Case::ExceptionalEven => 3,
        }
    }

    pub fn block_type(self) -> u8 {
        match self {
            Case::Irreducible => 1,
            Case::Generic => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Irreducible => "i",
            Case::Generic => "ii",
            Case::ExceptionalEven => "iiie",
            Case::ExceptionalOdd => "iiio",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub point: String,
    pub case: Case,
    pub lhs: HeckeModule,
    pub rhs: HeckeModule,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockDesc {
    #[serde(rename = "type")]
    pub block_type: u8,
    pub constituents: Vec<Constituent>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Parametrized {
    pub point: EGPoint,
    pub multiplicity: u32,
    pub payload: HeckeModule,
}

/// Runs the representation-theoretic checks for a map over its field `K`.
/// Everything is computed over `E = K(sqrt d)`, where every fiber and every
/// trace eigenvalue of a `K`-point is defined.
pub struct Checker {
    pub map: LMap,
    pub ext: LMap,
    pub e: FieldCtx,
}

impl Checker {
    pub fn new(map: &LMap) -> Checker {
        let e = map.curve.ctx.doubled();
        let ext = build_map(&map.space.over(&e), &map.curve.over(&e))
            .expect("same data over the extension");
        Checker {
            map: map.clone(),
            ext,
            e,
        }
    }

    fn base(&self) -> &FieldCtx {
        &self.map.curve.ctx
    }

    pub fn case_of(&self, x: &EGPoint) -> Case {
        match x {
            EGPoint::Node { .. } => Case::Irreducible,
            _ if self.map.curve.is_exceptional(self.base(), x) => match self.map.parity() {
                Parity::Even => Case::ExceptionalEven,
                Parity::Odd => Case::ExceptionalOdd,
            },
            _ => Case::Generic,
        }
    }

    /// `pi(rho_x)` over `E`.
    pub fn pi_at(&self, x: &EGPoint) -> Vec<Constituent> {
        let e = &self.e;
        let (rho, work) = self.ext.curve.rep_of_point(e, &x.embed(e, self.base()));
        debug_assert!(work == *e);
        pi_of_rho(e, &rho)
    }

    /// `(+)_{v in L^{-1}(x)} ASph(v)^ss`, over `E`.
    pub fn lhs(&self, x: &EGPoint) -> HeckeModule {
        let e = &self.e;
        let fib = self.map.fiber(x);
        HeckeModule::sum(fib.multiset().iter().map(|v| {
            let v = if fib.ctx == *e {
                v.clone()
            } else {
                v.embed(e, &fib.ctx)
            };
            semisimplify(e, &asph(&v))
        }))
    }

    /// `(+)_{pi in pi(rho_x)} (pi^{I(1)})^ss`, over `E`.
    pub fn rhs(&self, x: &EGPoint) -> HeckeModule {
        let e = &self.e;
        HeckeModule::sum(
            self.pi_at(x)
                .iter()
                .map(|pi| semisimplify(e, &invariants_of(e, pi))),
        )
    }

    pub fn verify_theorem(&self, x: &EGPoint) -> TheoremReport {
        let e = &self.e;
        let case = self.case_of(x);
        let lhs = self.lhs(x);
        let rhs = self.rhs(x);
        let shape = lhs.length(e) == case.expected_length()
            && (case != Case::Irreducible || lhs.is_supersingular(e))
            && (case != Case::ExceptionalOdd || lhs.members()[0] == lhs.members()[1]);
        let pass = lhs == rhs && shape;
        TheoremReport {
            point: self.map.curve.point_name(x),
            case,
            lhs,
            rhs,
            pass,
        }
    }

    pub fn block_of(&self, x: &EGPoint) -> BlockDesc {
        let mut constituents = self.pi_at(x);
        constituents.sort();
        constituents.dedup();
        BlockDesc {
            block_type: self.case_of(x).block_type(),
            constituents,
        }
    }

    /// Point, multiplicity and payload of the skyscraper attached to `pi`
    /// (written over `E`).
    pub fn parametrize(&self, pi: &Constituent) -> Option<Parametrized> {
        let e = &self.e;
        let payload = invariants_of(e, pi);
        let v: SatakePoint = asph_preimage(e, &payload)?;
        let point = self.ext.eval_in(e, &v).restrict(e, self.base())?;
        let multiplicity = if self.case_of(&point) == Case::ExceptionalOdd {
            2
        } else {
            1
        };
        Some(Parametrized {
            point,
            multiplicity,
            payload,
        })
    }

    /// `L_zeta(v)` computed through `ASph(v)`, `rho_of_module` and `locate`.
    pub fn eval_pointwise(&self, v: &SatakePoint) -> Option<EGPoint> {
        let base = self.base();
        let rho = rho_of_module(base, &asph(v))?;
        self.map.curve.locate(base, &rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::egcurve::build_curve;
    use crate::gf::make_ctx;
    use crate::satake::build_space;

    fn checker(ctx: &FieldCtx, parity: Parity) -> Checker {
        let map = build_map(
            &build_space(ctx, &parity.basic_zeta(ctx)),
            &build_curve(ctx, parity),
        )
        .unwrap();
        Checker::new(&map)
    }

    #[test]
    fn invariants_examples() {
        let f7 = make_ctx(7, 1).unwrap();
        let x = f7.from_int(3);
        for k in 1..3i64 {
            let pi = principal_series(&f7, 2 * k, &x, &SmoothChar::omega_pow(&f7, -k));
            let chi_k = TorusChar::new(7, k, -k);
            let expected = HeckeModule::RegStd {
                x: x.clone(),
                y: f7.zero(),
                z2: f7.one(),
                chi: chi_k,
            };
            assert!(crate::hecke::iso_equal(
                &invariants_of(&f7, &pi[0]),
                &expected
            ));
        }
        let triv = Constituent::Char {
            eta: SmoothChar::trivial(&f7),
        };
        assert_eq!(
            invariants_of(&f7, &triv),
            HeckeModule::HChar {
                eps: 0,
                c: f7.one(),
                chi: TorusChar { a: 0, b: 0 }
            }
        );
        let eta = SmoothChar::omega_pow(&f7, 2);
        let pi = principal_series(&f7, 0, &x, &eta);
        assert_eq!(
            invariants_of(&f7, &pi[0]),
            HeckeModule::NonRegStd {
                z1: x,
                z2: f7.one(),
                chi: TorusChar { a: 2, b: 2 }
            }
        );
    }

    #[test]
    fn pi_examples() {
        let f7 = make_ctx(7, 1).unwrap();
        let one = SmoothChar::trivial(&f7);
        assert_eq!(
            principal_series(&f7, 0, &f7.one(), &one),
            vec![
                Constituent::Char { eta: one.clone() },
                Constituent::St { eta: one.clone() }
            ]
        );
        // pi(r, x, eta) = pi(r, -x, unr(-1) eta)
        let x = f7.from_int(3);
        let eta = SmoothChar::new(&f7, 1, f7.from_int(5));
        let flipped = eta.mul(&f7, &SmoothChar::unr(&f7, &f7.from_int(-1)));
        assert_eq!(
            principal_series(&f7, 2, &x, &eta),
            principal_series(&f7, 2, &f7.neg(&x), &flipped)
        );
        // generic even point: pi(2k, x, w^-k) + pi(p-3-2k, 1/x, w^{k+1})
        let curve = build_curve(&f7, Parity::Even);
        let pt = EGPoint::Red {
            row: 1,
            value: x.clone(),
        };
        let (rho, _) = curve.rep_of_point(&f7, &pt);
        let mut expected = principal_series(&f7, 2, &x, &SmoothChar::omega_pow(&f7, -1));
        expected.extend(principal_series(
            &f7,
            7 - 3 - 2,
            &f7.inv(&x).unwrap(),
            &SmoothChar::omega_pow(&f7, 2),
        ));
        expected.sort();
        assert_eq!(pi_of_rho(&f7, &rho), expected);
    }

    #[test]
    fn odd_boundary_has_two_principal_series_of_weight_p_minus_2() {
        let f7 = make_ctx(7, 1).unwrap();
        let curve = build_curve(&f7, Parity::Odd);
        let (rho, e) = curve.rep_of_point(
            &f7,
            &EGPoint::Red {
                row: 0,
                value: f7.zero(),
            },
        );
        let GaloisRep::Reducible { chars } = &rho else {
            panic!()
        };
        let z = chars[1].v.clone();
        let zi = e.inv(&z).unwrap();
        let one = SmoothChar::trivial(&e);
        let mut expected = principal_series(&e, 5, &z, &one);
        expected.extend(principal_series(&e, 5, &zi, &one));
        expected.sort();
        assert_eq!(pi_of_rho(&e, &rho), expected);
    }

    #[test]
    fn theorem_and_corollary_on_small_primes() {
        for p in [5u32, 7] {
            let ctx = make_ctx(p, 1).unwrap();
            for parity in [Parity::Even, Parity::Odd] {
                let ch = checker(&ctx, parity);
                for x in ch.map.curve.enumerate_points(&ctx) {
                    let rep = ch.verify_theorem(&x);
                    assert!(
                        rep.pass,
                        "p={p} {parity} {}: {} vs {}",
                        rep.point, rep.lhs, rep.rhs
                    );
                }
            }
        }
    }

    #[test]
    fn blocks_and_parametrization() {
        let f5 = make_ctx(5, 1).unwrap();
        let even = checker(&f5, Parity::Even);
        let b = even.block_of(&EGPoint::Red {
            row: 0,
            value: f5.one(),
        });
        assert_eq!(b.block_type, 3);
        assert_eq!(b.constituents.len(), 3);
        let b = even.block_of(&EGPoint::Node { k: 1 });
        assert_eq!((b.block_type, b.constituents.len()), (1, 1));
        assert!(matches!(b.constituents[0], Constituent::SS { .. }));
        let st = b.constituents.clone();
        let par = even.parametrize(&st[0]).unwrap();
        assert_eq!((par.point, par.multiplicity), (EGPoint::Node { k: 1 }, 1));
        let odd = checker(&f5, Parity::Odd);
        let x = EGPoint::Red {
            row: 2,
            value: f5.from_int(-2),
        };
        let b = odd.block_of(&x);
        assert_eq!((b.block_type, b.constituents.len()), (3, 1));
        let par = odd.parametrize(&b.constituents[0]).unwrap();
        assert_eq!((par.point, par.multiplicity), (x, 2));
        let x = EGPoint::Red {
            row: 0,
            value: f5.from_int(-1),
        };
        let b = even.block_of(&x);
        let st = b
            .constituents
            .iter()
            .find(|c| matches!(c, Constituent::St { .. }))
            .unwrap();
        let par = even.parametrize(st).unwrap();
        assert_eq!(par.point, x);
        assert!(matches!(par.payload, HeckeModule::HChar { eps: -1, .. }));
    }

    #[test]
    fn pointwise_description_agrees() {
        for p in [5u32, 7, 11] {
            let ctx = make_ctx(p, 1).unwrap();
            for parity in [Parity::Even, Parity::Odd] {
                let ch = checker(&ctx, parity);
                for v in ch.map.space.enumerate_points() {
                    assert_eq!(
                        ch.eval_pointwise(&v),
                        Some(ch.map.eval(&v)),
                        "{}",
                        ch.map.space.point_name(&v)
                    );
                }
            }
        }
    }

    #[test]
    fn determinant_guard() {
        let f5 = make_ctx(5, 1).unwrap();
        let curve = build_curve(&f5, Parity::Even);
        let (rho, _) = curve.rep_of_point(
            &f5,
            &EGPoint::Red {
                row: 0,
                value: f5.from_int(2),
            },
        );
        assert!(pi_of_rho_checked(&f5, &rho, &Parity::Even.basic_zeta(&f5)).is_some());
        assert!(pi_of_rho_checked(&f5, &rho, &Parity::Odd.basic_zeta(&f5)).is_none());
    }
}
