//! Runs the invariant suite and prints one line per check.
//!
//! `cargo run --example verify_suite -- 7 2 basic-odd`

use modp_satake::suite::{run_suite, SuiteConfig, ZetaChoice};

fn main() -> Result<(), modp_satake::Error> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p = args.first().map_or(5, |s| s.parse().expect("prime"));
    let n = args.get(1).map_or(1, |s| s.parse().expect("degree"));
    let zeta: ZetaChoice = args.get(2).map_or("basic-even", String::as_str).parse()?;

    let report = run_suite(&SuiteConfig::new(p, n, zeta))?;
    for check in &report.checks {
        println!(
            "{:<5} {}",
            if check.pass { "ok" } else { "FAIL" },
            check.name
        );
        for f in check.failures.iter().take(3) {
            println!("        {f}");
        }
    }
    let bad = report.points.iter().filter(|r| !r.pass).count();
    println!("{} points checked, {bad} failing", report.points.len());
    Ok(())
}
