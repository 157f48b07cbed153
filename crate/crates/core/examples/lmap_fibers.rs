//! Fibers of `L_zeta` over every point of the basic odd chain at `p = 5`,
//! including the ramified ones over `t = 2` and `t = -2`.

use modp_satake::chars::Parity;
use modp_satake::egcurve::build_curve;
use modp_satake::gf::make_ctx;
use modp_satake::lmap::{build_map, verify_geometry};
use modp_satake::satake::build_space;

fn main() -> Result<(), modp_satake::Error> {
    let ctx = make_ctx(5, 1)?;
    let parity = Parity::Odd;
    let map = build_map(
        &build_space(&ctx, &parity.basic_zeta(&ctx)),
        &build_curve(&ctx, parity),
    )?;
    for x in map.curve.enumerate_points(&ctx) {
        let fib = map.fiber(&x);
        let over = map.space.over(&fib.ctx);
        let pts: Vec<String> = fib
            .points
            .iter()
            .map(|fp| format!("{} x{}", over.point_name(&fp.point), fp.multiplicity))
            .collect();
        let note = if fib.ramified { " ramified" } else { "" };
        println!(
            "{:<16} <- {}{note}",
            map.curve.point_name(&x),
            pts.join(", ")
        );
    }
    for check in verify_geometry(&map) {
        println!("{}: {}", check.name, check.pass);
    }
    Ok(())
}
