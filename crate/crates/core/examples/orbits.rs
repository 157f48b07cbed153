//! Swap orbits of torus characters grouped by their restriction to `F_p^x`.

use modp_satake::chars::all_orbits;

fn main() {
    let p: u32 = std::env::args()
        .nth(1)
        .map_or(7, |s| s.parse().expect("prime"));
    let table = all_orbits(p);
    for (e, fiber) in &table {
        let names: Vec<String> = fiber.iter().map(|g| g.to_string()).collect();
        println!("omega^{e}: {} orbits  {}", fiber.len(), names.join(" "));
    }
    let total: usize = table.iter().map(|(_, f)| f.len()).sum();
    println!("total {total} = (p^2 - p)/2 = {}", (p * p - p) / 2);
}
