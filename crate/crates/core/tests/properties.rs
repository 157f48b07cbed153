use proptest::prelude::*;

use modp_satake::chars::{orbit_of, reduce_to_basic, Parity, SmoothChar, TorusChar};
use modp_satake::cli::{parse_curve_point, parse_satake_point};
use modp_satake::egcurve::{build_curve, curve_for};
use modp_satake::gf::{make_ctx, FieldCtx, FieldElement};
use modp_satake::hecke::{asph, iso_equal, semisimplify, twist_module};
use modp_satake::llc::{invariants_of, pi_of_rho};
use modp_satake::lmap::build_map;
use modp_satake::satake::{build_space, twist_point};

fn field() -> impl Strategy<Value = FieldCtx> {
    (prop::sample::select(vec![5u32, 7, 11, 13]), 1usize..=3)
        .prop_map(|(p, n)| make_ctx(p, n).unwrap())
}

fn elt(ctx: &FieldCtx, idx: u128) -> FieldElement {
    ctx.element_at(idx % ctx.order())
}

fn unit(ctx: &FieldCtx, idx: u128) -> FieldElement {
    ctx.element_at(1 + idx % (ctx.order() - 1))
}

fn parity() -> impl Strategy<Value = Parity> {
    prop::sample::select(vec![Parity::Even, Parity::Odd])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(ctx in field(), a in any::<u128>(), b in any::<u128>(), c in any::<u128>()) {
        let (a, b, c) = (elt(&ctx, a), elt(&ctx, b), elt(&ctx, c));
        prop_assert_eq!(ctx.mul(&a, &ctx.add(&b, &c)), ctx.add(&ctx.mul(&a, &b), &ctx.mul(&a, &c)));
        prop_assert_eq!(ctx.mul(&ctx.mul(&a, &b), &c), ctx.mul(&a, &ctx.mul(&b, &c)));
        prop_assert_eq!(ctx.add(&a, &ctx.neg(&a)), ctx.zero());
        prop_assert_eq!(ctx.pow(&a, ctx.order()), a.clone());
        if !ctx.is_zero(&a) {
            prop_assert_eq!(ctx.mul(&a, &ctx.inv(&a).unwrap()), ctx.one());
        }
        let sq = ctx.square(&b);
        let r = ctx.sqrt(&sq).unwrap();
        prop_assert_eq!(ctx.square(&r), sq);
    }

    #[test]
    fn doubled_field_restricts_back(ctx in field(), a in any::<u128>()) {
        let e = ctx.doubled();
        let a = elt(&ctx, a);
        prop_assert_eq!(e.restrict_to(&ctx, &e.embed_from(&ctx, &a)), Some(a));
    }

    #[test]
    fn swap_is_an_involution(p in prop::sample::select(vec![5u32, 7, 11, 13]), a in 0i64..12, b in 0i64..12, r in -20i64..20) {
        let chi = TorusChar::new(p, a, b);
        prop_assert_eq!(chi.swap().swap(), chi);
        prop_assert_eq!(orbit_of(chi), orbit_of(chi.swap()));
        prop_assert_eq!(orbit_of(chi.twist(p, r)), orbit_of(chi.swap().twist(p, r)));
    }

    #[test]
    fn reduction_is_basic(ctx in field(), c in 0i64..12, v in any::<u128>()) {
        let zeta = SmoothChar::new(&ctx, c, unit(&ctx, v));
        let red = reduce_to_basic(&ctx, &zeta);
        let e = &red.ctx;
        let twisted = zeta.embed(e, &ctx).mul(e, &red.eta.square(e));
        prop_assert_eq!(twisted, red.parity.basic_zeta(e));
    }

    #[test]
    fn fiber_contains_the_point(ctx in field(), par in parity(), i in any::<usize>(), c in 0i64..12, mv in any::<u128>()) {
        let mu = SmoothChar::new(&ctx, c, unit(&ctx, mv));
        let zeta = par.basic_zeta(&ctx).mul(&ctx, &mu.square(&ctx));
        let space = build_space(&ctx, &zeta);
        let map = build_map(&space, &curve_for(&ctx, &zeta)).unwrap();
        let pts = space.enumerate_points();
        let v = &pts[i % pts.len()];
        let x = map.eval(v);
        let fib = map.fiber(&x);
        prop_assert!(fib.cardinality() <= 2);
        let v = v.embed(&fib.ctx, &ctx);
        prop_assert!(fib.points.iter().any(|fp| fp.point.same_as(&v)));
    }

    #[test]
    fn asph_commutes_with_twist(ctx in field(), par in parity(), i in any::<usize>(), r in -12i64..12, z in any::<u128>()) {
        let space = build_space(&ctx, &par.basic_zeta(&ctx));
        let pts = space.enumerate_points();
        let v = &pts[i % pts.len()];
        let z0 = unit(&ctx, z);
        let lhs = semisimplify(&ctx, &asph(&twist_point(&ctx, v, r, &z0)));
        let rhs = semisimplify(&ctx, &twist_module(&ctx, &asph(v), r, &z0));
        prop_assert!(iso_equal(&lhs, &rhs));
        prop_assert_eq!(semisimplify(&ctx, &lhs), lhs);
    }

    #[test]
    fn pi_of_rho_has_central_character_zeta(ctx in field(), par in parity(), i in any::<usize>()) {
        let curve = build_curve(&ctx, par);
        let pts = curve.enumerate_points(&ctx);
        let (rho, e) = curve.rep_of_point(&ctx, &pts[i % pts.len()]);
        let zeta = par.basic_zeta(&e);
        for pi in pi_of_rho(&e, &rho) {
            prop_assert_eq!(pi.central_char(&e), zeta.clone());
            let m = invariants_of(&e, &pi);
            prop_assert!(m.z2(&e).is_some());
        }
    }

    #[test]
    fn point_names_parse_back(ctx in field(), par in parity(), i in any::<usize>(), j in any::<usize>()) {
        let curve = build_curve(&ctx, par);
        let pts = curve.enumerate_points(&ctx);
        let x = &pts[i % pts.len()];
        prop_assert_eq!(&parse_curve_point(&curve, &curve.point_name(x)).unwrap(), x);
        let space = build_space(&ctx, &par.basic_zeta(&ctx));
        let vs = space.enumerate_points();
        let v = &vs[j % vs.len()];
        prop_assert!(parse_satake_point(&space, &space.point_name(v)).unwrap().same_as(v));
    }
}
