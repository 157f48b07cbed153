//! Blocks at a few points and the point each constituent is sent back to.

use modp_satake::chars::Parity;
use modp_satake::egcurve::EGPoint;
use modp_satake::gf::make_ctx;
use modp_satake::llc::Checker;
use modp_satake::suite::basic_map;

fn main() -> Result<(), modp_satake::Error> {
    let ctx = make_ctx(5, 1)?;
    for parity in [Parity::Even, Parity::Odd] {
        let ch = Checker::new(&basic_map(&ctx, parity));
        let mut pts = vec![EGPoint::Node { k: 1 }];
        pts.extend(ch.map.curve.exceptional_points(&ctx).into_iter().take(1));
        pts.extend(
            ch.map
                .curve
                .enumerate_points(&ctx)
                .into_iter()
                .filter(|x| !x.is_node() && !ch.map.curve.is_exceptional(&ctx, x))
                .take(1),
        );
        for x in pts {
            let block = ch.block_of(&x);
            println!(
                "{parity} {} : block of type {}",
                ch.map.curve.point_name(&x),
                block.block_type
            );
            for pi in &block.constituents {
                let par = ch.parametrize(pi).expect("constituent of a block");
                println!(
                    "    {pi} -> {} x{}  payload {}",
                    ch.map.curve.point_name(&par.point),
                    par.multiplicity,
                    par.payload
                );
            }
        }
    }
    Ok(())
}
