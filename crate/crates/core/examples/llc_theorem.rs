//! Both sides of the comparison at every point of a basic chain: the fiber of
//! `L_zeta` through `ASph`, and the invariants of `pi(rho_x)`.

use modp_satake::chars::Parity;
use modp_satake::gf::make_ctx;
use modp_satake::llc::Checker;
use modp_satake::suite::basic_map;

fn main() -> Result<(), modp_satake::Error> {
    let ctx = make_ctx(7, 1)?;
    let parity = match std::env::args().nth(1).as_deref() {
        Some("odd") => Parity::Odd,
        _ => Parity::Even,
    };
    let ch = Checker::new(&basic_map(&ctx, parity));
    for x in ch.map.curve.enumerate_points(&ctx) {
        let r = ch.verify_theorem(&x);
        println!(
            "{:<14} {:<4} {}  {}",
            r.point,
            r.case.to_string(),
            if r.pass { "ok" } else { "MISMATCH" },
            r.lhs
        );
    }
    Ok(())
}
