//! The basic Emerton-Gee chains: labels, irreducible points, exceptional points
//! and a Graphviz rendering.

use modp_satake::chars::Parity;
use modp_satake::egcurve::build_curve;
use modp_satake::gf::make_ctx;

fn main() -> Result<(), modp_satake::Error> {
    let ctx = make_ctx(5, 1)?;
    for parity in [Parity::Even, Parity::Odd] {
        let curve = build_curve(&ctx, parity);
        println!(
            "{parity}: {} lines, {} double points",
            curve.components.len(),
            curve.double_points()
        );
        for c in &curve.components {
            println!(
                "  row {}: {} | {}  ({})",
                c.index, c.label[0], c.label[1], c.coordinate
            );
        }
        for n in &curve.nodes {
            let (rho, _) =
                curve.rep_of_point(&ctx, &modp_satake::egcurve::EGPoint::Node { k: n.k });
            println!("  node-{}: {rho}", n.k);
        }
        let ex: Vec<String> = curve
            .exceptional_points(&ctx)
            .iter()
            .map(|x| curve.point_name(x))
            .collect();
        println!("  exceptional: {}", ex.join(", "));
    }
    print!("{}", build_curve(&ctx, Parity::Odd).to_dot());
    Ok(())
}
