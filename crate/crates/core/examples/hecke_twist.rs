//! Antispherical modules of Satake points and their behaviour under twisting.

use modp_satake::chars::Parity;
use modp_satake::gf::make_ctx;
use modp_satake::hecke::{asph, iso_equal, semisimplify, twist_module};
use modp_satake::satake::{build_space, twist_point};

fn main() -> Result<(), modp_satake::Error> {
    let ctx = make_ctx(7, 1)?;
    let space = build_space(&ctx, &Parity::Even.basic_zeta(&ctx));
    let z0 = ctx.from_int(3);
    for v in space.enumerate_points().iter().step_by(9) {
        let m = asph(v);
        let twisted = twist_point(&ctx, v, 1, &z0);
        let same = iso_equal(
            &semisimplify(&ctx, &asph(&twisted)),
            &semisimplify(&ctx, &twist_module(&ctx, &m, 1, &z0)),
        );
        println!(
            "{:<14} {m}  ss: {}  twist ok: {same}",
            space.point_name(v),
            semisimplify(&ctx, &m)
        );
    }
    Ok(())
}
