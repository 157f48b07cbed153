//! Components and points of the Satake space for a central character.

use modp_satake::chars::{Parity, SmoothChar};
use modp_satake::gf::make_ctx;
use modp_satake::satake::build_space;

fn main() -> Result<(), modp_satake::Error> {
    let ctx = make_ctx(5, 1)?;
    for zeta in [
        Parity::Even.basic_zeta(&ctx),
        Parity::Odd.basic_zeta(&ctx),
        SmoothChar::new(&ctx, 2, ctx.from_int(3)),
    ] {
        let space = build_space(&ctx, &zeta);
        println!(
            "zeta = ({}, {}): {} points",
            zeta.c,
            zeta.v,
            space.point_count()
        );
        for c in &space.components {
            println!("  {c}");
        }
    }
    let space = build_space(&ctx, &Parity::Odd.basic_zeta(&ctx));
    let names: Vec<String> = space
        .enumerate_points()
        .iter()
        .take(6)
        .map(|v| space.point_name(v))
        .collect();
    println!("first points: {}", names.join(", "));
    Ok(())
}
