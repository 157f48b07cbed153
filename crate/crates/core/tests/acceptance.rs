//! Acceptance criteria 1-7, one line each.

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use modp_satake::chars::Parity;
use modp_satake::cli::{execute, Cli};
use modp_satake::gf::make_ctx;
use modp_satake::llc::Checker;
use modp_satake::lmap::Check;
use modp_satake::suite::{
    basic_map, block_check, chain_checks, geometry_checks, orbit_checks, parametrization_check,
    support_check, theorem_check, theorem_reports, twist_checks,
};

const PRIMES: [u32; 4] = [5, 7, 11, 13];
const DEGREES: [usize; 2] = [1, 2];
const PARITIES: [Parity; 2] = [Parity::Even, Parity::Odd];

fn tagged(p: u32, n: usize, checks: Vec<Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|c| Check {
            name: format!("p={p} n={n} {}", c.name),
            ..c
        })
        .collect()
}

fn verify_bytes(args: &[&str]) -> Vec<u8> {
    let cli = Cli::try_parse_from(["modp-satake", "verify"].iter().chain(args)).unwrap();
    let mut out = Vec::new();
    assert!(execute(&cli, &mut out).unwrap());
    out
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut crit: [Vec<Check>; 7] = Default::default();
    for p in PRIMES {
        crit[0].extend(tagged(p, 1, orbit_checks(p)));
        for n in DEGREES {
            let ctx = make_ctx(p, n).unwrap();
            crit[1].extend(tagged(p, n, chain_checks(&ctx)));
            for parity in PARITIES {
                let map = basic_map(&ctx, parity);
                crit[2].extend(tagged(p, n, geometry_checks(&map)));
                let ch = Checker::new(&map);
                let reports = theorem_reports(&ch);
                crit[3].extend(tagged(p, n, theorem_check(&ch, &reports)));
                crit[3].extend(tagged(p, n, vec![support_check(&ch)]));
                crit[4].extend(tagged(p, n, twist_checks(&ctx, parity, 7, 20)));
                crit[5].extend(tagged(
                    p,
                    n,
                    vec![parametrization_check(&ch), block_check(&ch)],
                ));
            }
        }
    }
    let mut det = Vec::new();
    for args in [
        &["--p", "5", "--n", "2", "--zeta", "basic-even"][..],
        &["--p", "7", "--zeta", "basic-odd", "--seed", "3"],
        &["--p", "7", "--zeta", "c:3:[2]", "--format", "tsv"],
    ] {
        if verify_bytes(args) != verify_bytes(args) {
            det.push(format!("verify {} differs between runs", args.join(" ")));
        }
    }
    crit[6].push(Check::new("verify-determinism", det));

    let titles = [
        "orbit combinatorics",
        "chain structure",
        "morphism geometry",
        "main theorem and corollary cases",
        "equivariance and twisting",
        "parametrization of blocks",
        "determinism of verify",
    ];
    let mut all = true;
    for (i, (title, checks)) in titles.iter().zip(&crit).enumerate() {
        let failed: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
        let mark = if failed.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {mark} {title} ({} checks)",
            i + 1,
            checks.len()
        );
        for c in &failed {
            println!(
                "    {}: {}",
                c.name,
                c.failures
                    .iter()
                    .take(3)
                    .cloned()
                    .collect::<Vec<_>>()
                    .join("; ")
            );
        }
        all &= failed.is_empty();
    }
    println!(
        "acceptance finished in {:.1}s",
        start.elapsed().as_secs_f64()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
