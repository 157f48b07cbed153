//! The invariant suite run by `verify` and by the acceptance tests.
//!
//! Every check is exhaustive over the points of the relevant objects over
//! `F_{p^n}`; the twisting checks additionally draw characters `eta` from a
//! seeded ChaCha stream, half of them with `eta(p^{-1})` outside `F_{p^n}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

use crate::chars::{all_orbits, restrict, CentralChar, Parity, SmoothChar};
use crate::egcurve::{build_curve, curve_for, twist_curve};
use crate::error::Error;
use crate::gf::{make_ctx, FieldCtx};
use crate::hecke::{asph, iso_equal, semisimplify, twist_module};
use crate::llc::{invariants_of, Case, Checker, TheoremReport};
use crate::lmap::{build_map, verify_geometry, Check, LMap};
use crate::satake::{build_space, twist_point, SatakePoint};

/// Central character as given on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZetaChoice {
    Basic(Parity),
    /// `zeta| = omega^c`, `zeta(p^{-1})` given by its coefficients.
    Explicit {
        c: i64,
        v: Vec<i64>,
    },
}

impl ZetaChoice {
    pub fn resolve(&self, ctx: &FieldCtx) -> Result<CentralChar, Error> {
        match self {
            ZetaChoice::Basic(parity) => Ok(parity.basic_zeta(ctx)),
            ZetaChoice::Explicit { c, v } => {
                let v = ctx.element_lenient(v)?;
                if ctx.is_zero(&v) {
                    return Err(Error::Usage("zeta(p^-1) must be nonzero".into()));
                }
                Ok(SmoothChar::new(ctx, *c, v))
            }
        }
    }

    pub fn parity(&self, p: u32) -> Parity {
        match self {
            ZetaChoice::Basic(parity) => *parity,
            ZetaChoice::Explicit { c, .. } => {
                Parity::of_exponent(c.rem_euclid(p as i64 - 1) as u32)
            }
        }
    }
}

impl FromStr for ZetaChoice {
    type Err = Error;

    /// `basic-even`, `basic-odd` or `c:<int>:<coeffs>` with coefficients
    /// written `3` or `[1,2]`.
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "basic-even" => return Ok(ZetaChoice::Basic(Parity::Even)),
            "basic-odd" => return Ok(ZetaChoice::Basic(Parity::Odd)),
            _ => {}
        }
        let bad = || Error::Usage(format!("bad zeta `{s}`"));
        let rest = s.strip_prefix("c:").ok_or_else(bad)?;
        let (c, v) = rest.split_once(':').ok_or_else(bad)?;
        Ok(ZetaChoice::Explicit {
            c: c.trim().parse().map_err(|_| bad())?,
            v: parse_coeffs(v).ok_or_else(bad)?,
        })
    }
}

impl fmt::Display for ZetaChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZetaChoice::Basic(parity) => write!(f, "basic-{parity}"),
            ZetaChoice::Explicit { c, v } => {
                let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "c:{c}:[{}]", v.join(","))
            }
        }
    }
}

/// `3`, `-1` or `[1, 2]`.
pub fn parse_coeffs(s: &str) -> Option<Vec<i64>> {
    let s = s.trim();
    let inner = match s.strip_prefix('[') {
        Some(rest) => rest.strip_suffix(']')?,
        None => s,
    };
    inner.split(',').map(|t| t.trim().parse().ok()).collect()
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub p: u32,
    pub n: usize,
    pub zeta: ZetaChoice,
    pub seed: u64,
    /// Number of sampled twists per parity.
    pub samples: usize,
}

impl SuiteConfig {
    pub fn new(p: u32, n: usize, zeta: ZetaChoice) -> Self {
        SuiteConfig {
            p,
            n,
            zeta,
            seed: 0,
            samples: 20,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub p: u32,
    pub n: usize,
    pub zeta: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub points: Vec<TheoremReport>,
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|c| Check {
            name: format!("{prefix}/{}", c.name),
            ..c
        })
        .collect()
}

/// Orbit counts of torus characters of `F_p^x x F_p^x`.
pub fn orbit_checks(p: u32) -> Vec<Check> {
    let table = all_orbits(p);
    let total: usize = table.iter().map(|(_, f)| f.len()).sum();
    let mut fails = Vec::new();
    let expected = (p * p - p) as usize / 2;
    if total != expected {
        fails.push(format!("{total} orbits, expected {expected}"));
    }
    for (e, fiber) in &table {
        let nonreg = fiber.iter().filter(|g| !g.regular).count();
        let want = if e % 2 == 0 {
            ((p + 1) / 2, 2)
        } else {
            ((p - 1) / 2, 0)
        };
        if (fiber.len(), nonreg) != (want.0 as usize, want.1) {
            fails.push(format!(
                "fiber over omega^{e}: {} orbits, {nonreg} non-regular",
                fiber.len()
            ));
        }
        if fiber.iter().any(|g| restrict(p, *g) != *e) {
            fails.push(format!("fiber over omega^{e} has a stray orbit"));
        }
    }
    vec![Check::new("orbits", fails)]
}

/// Shape of both basic chains, and the `p = 5` labels.
pub fn chain_checks(ctx: &FieldCtx) -> Vec<Check> {
    let p = ctx.p();
    let h = ((p - 1) / 2) as usize;
    let mut checks = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let c = build_curve(ctx, parity);
        let got = (
            c.components.len(),
            c.double_points(),
            c.nodes.len(),
            c.exceptional_points(ctx).len(),
        );
        let want = match parity {
            Parity::Even => (h, h - 1, h + 1, 4),
            Parity::Odd => (h + 1, h, h, 4),
        };
        let mut fails = Vec::new();
        if got != want {
            fails.push(format!(
                "(components, double points, irreducible, exceptional) = {got:?}, expected {want:?}"
            ));
        }
        let flagged = c
            .enumerate_points(ctx)
            .iter()
            .filter(|x| c.is_exceptional(ctx, x))
            .count();
        if flagged != 4 {
            fails.push(format!("{flagged} enumerated exceptional points"));
        }
        if p == 5 {
            let labels: Vec<String> = c
                .components
                .iter()
                .map(|c| format!("{} | {}", c.label[0], c.label[1]))
                .collect();
            let table: &[&str] = match parity {
                Parity::Even => &["Sym^0 | Sym^2⊗det^1", "Sym^2⊗det^3 | Sym^0⊗det^2"],
                Parity::Odd => &[
                    "Sym^3 | \"Sym^-1\"",
                    "Sym^1⊗det^1 | Sym^1⊗det^3",
                    "\"Sym^-1⊗det^2\" | Sym^3⊗det^2",
                ],
            };
            if labels != table {
                fails.push(format!("labels {labels:?}"));
            }
        }
        checks.push(Check::new(format!("chain-{parity}"), fails));
    }
    checks
}

/// `L_zeta` for the basic character of `parity`.
pub fn basic_map(ctx: &FieldCtx, parity: Parity) -> LMap {
    build_map(
        &build_space(ctx, &parity.basic_zeta(ctx)),
        &build_curve(ctx, parity),
    )
    .expect("basic space and curve match")
}

pub fn geometry_checks(map: &LMap) -> Vec<Check> {
    prefixed(&format!("geometry-{}", map.parity()), verify_geometry(map))
}

pub fn theorem_reports(ch: &Checker) -> Vec<TheoremReport> {
    let ctx = &ch.map.curve.ctx;
    ch.map
        .curve
        .enumerate_points(ctx)
        .iter()
        .map(|x| ch.verify_theorem(x))
        .collect()
}

pub fn theorem_check(ch: &Checker, reports: &[TheoremReport]) -> Vec<Check> {
    let fails = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} ({}): {} vs {}", r.point, r.case, r.lhs, r.rhs))
        .collect();
    let mut seen = [0usize; 4];
    for r in reports {
        seen[r.case as usize] += 1;
    }
    let mut shape = Vec::new();
    let exceptional = match ch.map.parity() {
        Parity::Even => Case::ExceptionalEven,
        Parity::Odd => Case::ExceptionalOdd,
    };
    if seen[exceptional as usize] != 4 {
        shape.push(format!(
            "{} points of case {exceptional}",
            seen[exceptional as usize]
        ));
    }
    if seen[Case::Irreducible as usize] != ch.map.curve.nodes.len() {
        shape.push(format!(
            "{} irreducible points",
            seen[Case::Irreducible as usize]
        ));
    }
    let name = |s: &str| format!("{s}-{}", ch.map.parity());
    vec![
        Check::new(name("theorem"), fails),
        Check::new(name("corollary-cases"), shape),
    ]
}

/// Block types against fiber shapes.
pub fn block_check(ch: &Checker) -> Check {
    let ctx = &ch.map.curve.ctx;
    let mut fails = Vec::new();
    for x in ch.map.curve.enumerate_points(ctx) {
        let b = ch.block_of(&x);
        let fib = ch.map.fiber(&x);
        let exceptional = ch.map.curve.is_exceptional(ctx, &x);
        let ok = match b.block_type {
            1 => fib.cardinality() == 1 && !fib.ramified && !exceptional,
            2 => fib.cardinality() == 2 && !exceptional,
            _ => exceptional,
        };
        if !ok {
            fails.push(format!(
                "{}: type {} with fiber of size {}",
                ch.map.curve.point_name(&x),
                b.block_type,
                fib.cardinality()
            ));
        }
    }
    Check::new(format!("blocks-{}", ch.map.parity()), fails)
}

/// Every simple constituent of every block is sent back to its point.
pub fn parametrization_check(ch: &Checker) -> Check {
    let ctx = &ch.map.curve.ctx;
    let mut fails = Vec::new();
    for x in ch.map.curve.enumerate_points(ctx) {
        let want = if ch.case_of(&x) == Case::ExceptionalOdd {
            2
        } else {
            1
        };
        for pi in ch.block_of(&x).constituents {
            match ch.parametrize(&pi) {
                Some(par) if par.point == x && par.multiplicity == want => {}
                Some(par) => fails.push(format!(
                    "{pi} at {}: got {} x{}",
                    ch.map.curve.point_name(&x),
                    ch.map.curve.point_name(&par.point),
                    par.multiplicity
                )),
                None => fails.push(format!("{pi} at {}: no point", ch.map.curve.point_name(&x))),
            }
        }
    }
    Check::new(format!("parametrization-{}", ch.map.parity()), fails)
}

/// `pi^{I(1)}` sits over the component data of the central character.
pub fn support_check(ch: &Checker) -> Check {
    let e = &ch.e;
    let p = e.p();
    let zeta = ch.ext.space.zeta.clone();
    let mut fails = Vec::new();
    for x in ch.map.curve.enumerate_points(&ch.map.curve.ctx) {
        for pi in ch.pi_at(&x) {
            if pi.central_char(e) != zeta {
                fails.push(format!("{pi}: central character"));
            }
            for m in semisimplify(e, &invariants_of(e, &pi)).members() {
                let chi = m.chi().expect("simple module has a component");
                let restr = restrict(p, crate::chars::orbit_of(chi));
                if restr != zeta.c || m.z2(e).as_ref() != Some(&zeta.v) {
                    fails.push(format!("{pi}: invariants {m} off the support"));
                }
            }
        }
    }
    Check::new(format!("support-{}", ch.map.parity()), fails)
}

fn random_unit(rng: &mut ChaCha8Rng, ctx: &FieldCtx) -> crate::gf::FieldElement {
    ctx.element_at(rng.gen_range(1..ctx.order()))
}

/// `eta` over `e = k(sqrt d)`; when `outside` its value at `p^{-1}` is not in `k`.
fn random_eta(rng: &mut ChaCha8Rng, k: &FieldCtx, e: &FieldCtx, outside: bool) -> SmoothChar {
    let c = rng.gen_range(0..k.p() as i64 - 1);
    let v = loop {
        if !outside {
            break e.embed_from(k, &random_unit(rng, k));
        }
        let v = random_unit(rng, e);
        if e.restrict_to(k, &v).is_none() {
            break v;
        }
    };
    SmoothChar::new(e, c, v)
}

/// Equivariance of `ASph`, twisting of invariants, and the square
/// `L_{zeta eta^2}(v . eta) = L_zeta(v) . eta`, for `samples` sampled `eta`.
///
/// The starting characters are `zeta_basic mu^2` with `mu` trivial for the
/// first sample and sampled otherwise; the points are the `F_{p^n}`-points of
/// the basic space moved by `mu`.
pub fn twist_checks(ctx: &FieldCtx, parity: Parity, seed: u64, samples: usize) -> Vec<Check> {
    let e = ctx.doubled();
    let mut rng = ChaCha8Rng::seed_from_u64(
        seed ^ ((ctx.p() as u64) << 8 | ctx.degree() as u64) ^ parity as u64,
    );
    let ch = Checker::new(&basic_map(ctx, parity));
    let basic_pts: Vec<SatakePoint> = ch
        .map
        .space
        .enumerate_points()
        .iter()
        .map(|v| v.embed(&e, ctx))
        .collect();
    let constituents: Vec<_> = {
        let mut all: Vec<_> = ch
            .map
            .curve
            .enumerate_points(ctx)
            .iter()
            .flat_map(|x| ch.pi_at(x))
            .collect();
        all.sort();
        all.dedup();
        all
    };
    let zb = parity.basic_zeta(&e);
    let curve_b = build_curve(&e, parity);
    let mut asph_f = Vec::new();
    let mut inv_f = Vec::new();
    let mut square_f = Vec::new();
    for i in 0..samples {
        let mu = if i == 0 {
            SmoothChar::trivial(&e)
        } else {
            random_eta(&mut rng, ctx, &e, false)
        };
        let eta = random_eta(&mut rng, ctx, &e, i % 2 == 1);
        let tag = format!("eta=({},{})", eta.c, eta.v);

        let zeta = zb.mul(&e, &mu.square(&e));
        let zeta2 = zeta.mul(&e, &eta.square(&e));
        let map1 =
            build_map(&build_space(&e, &zeta), &curve_for(&e, &zeta)).expect("matching data");
        let map2 =
            build_map(&build_space(&e, &zeta2), &curve_for(&e, &zeta2)).expect("matching data");
        let curve1 = if i == 0 {
            curve_b.clone()
        } else {
            map1.curve.clone()
        };
        for w in &basic_pts {
            let v = twist_point(&e, w, mu.c as i64, &mu.v);
            let moved = twist_point(&e, &v, eta.c as i64, &eta.v);

            let lhs = semisimplify(&e, &asph(&moved));
            let rhs = semisimplify(&e, &twist_module(&e, &asph(&v), eta.c as i64, &eta.v));
            if !iso_equal(&lhs, &rhs) {
                asph_f.push(format!(
                    "{tag} at {}: {lhs} vs {rhs}",
                    map1.space.point_name(&v)
                ));
            }

            let left = map2.eval_in(&e, &moved);
            let right = twist_curve(&e, &curve1, &map1.eval_in(&e, &v), &eta, &map2.curve);
            if right.as_ref() != Some(&left) {
                square_f.push(format!(
                    "{tag} at {}: {} vs {:?}",
                    map1.space.point_name(&v),
                    map2.curve.point_name(&left),
                    right.map(|r| map2.curve.point_name(&r))
                ));
            }
        }
        for pi in &constituents {
            let lhs = invariants_of(&e, &pi.twist(&e, &eta));
            let rhs = twist_module(&e, &invariants_of(&e, pi), eta.c as i64, &eta.v);
            if !iso_equal(&lhs, &rhs) {
                inv_f.push(format!("{tag} on {pi}: {lhs} vs {rhs}"));
            }
        }
    }
    prefixed(
        &format!("twist-{parity}"),
        vec![
            Check::new("asph-equivariance", asph_f),
            Check::new("invariants", inv_f),
            Check::new("l-square", square_f),
        ],
    )
}

/// The full suite for one configuration.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let ctx = make_ctx(cfg.p, cfg.n)?;
    let parity = cfg.zeta.parity(cfg.p);
    let zeta = cfg.zeta.resolve(&ctx)?;
    let map = build_map(&build_space(&ctx, &zeta), &curve_for(&ctx, &zeta))?;

    let mut checks = orbit_checks(cfg.p);
    checks.extend(chain_checks(&ctx));
    checks.extend(geometry_checks(&basic_map(&ctx, parity)));
    let ch = Checker::new(&map);
    let points = theorem_reports(&ch);
    checks.extend(theorem_check(&ch, &points));
    checks.push(block_check(&ch));
    checks.push(parametrization_check(&ch));
    checks.push(support_check(&ch));
    checks.extend(twist_checks(&ctx, parity, cfg.seed, cfg.samples));

    Ok(SuiteReport {
        p: cfg.p,
        n: cfg.n,
        zeta: cfg.zeta.to_string(),
        seed: cfg.seed,
        pass: checks.iter().all(|c| c.pass),
        checks,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_choice_round_trip() {
        for s in ["basic-even", "basic-odd", "c:3:[1,2]", "c:-1:[4]"] {
            let z: ZetaChoice = s.parse().unwrap();
            assert_eq!(z.to_string().parse::<ZetaChoice>().unwrap(), z);
        }
        assert!("c:3".parse::<ZetaChoice>().is_err());
        assert!("even".parse::<ZetaChoice>().is_err());
        assert_eq!(parse_coeffs("[1, -2]"), Some(vec![1, -2]));
        assert_eq!(parse_coeffs("4"), Some(vec![4]));
    }

    #[test]
    fn suite_passes_at_five() {
        for zeta in ["basic-even", "basic-odd", "c:1:[2]", "c:2:[3]"] {
            let mut cfg = SuiteConfig::new(5, 1, zeta.parse().unwrap());
            cfg.samples = 6;
            let rep = run_suite(&cfg).unwrap();
            let failed: Vec<_> = rep.checks.iter().filter(|c| !c.pass).collect();
            assert!(failed.is_empty(), "{zeta}: {failed:#?}");
        }
    }
}
