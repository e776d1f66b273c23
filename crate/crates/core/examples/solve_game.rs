//! Who wins Nofil on the small Steiner triple systems.

use nofil::constructions::sts_blocks;
use nofil::design::{fixtures, TripleSystem};
use nofil::game;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut systems = vec![fixtures::fano(), fixtures::sts9()];
    let b13: Vec<[u32; 3]> = sts_blocks(13)?.iter().map(|b| b.map(|x| x + 1)).collect();
    systems.push(TripleSystem::from_numbered(13, &b13)?);
    for ts in &systems {
        let o = game::outcome(ts, 15)?;
        let line: Vec<&str> = o.principal_variation.iter().map(|&x| ts.label(x)).collect();
        println!("STS({}): {} after {} moves ({}), {} positions", ts.v(), o.winner, line.len(), line.join(","), o.positions);
    }
    Ok(())
}
