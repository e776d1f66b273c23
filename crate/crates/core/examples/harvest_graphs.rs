//! Every graph that turns up while playing Nofil on the STS(9), and on a few
//! hill-climbed STS(13)s.

use nofil::design::fixtures;
use nofil::game::{self, HarvestLimits};
use nofil::search::{self, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let limits = HarvestLimits::default();
    let cat = game::harvest_graphs(&fixtures::sts9(), &limits)?;
    println!("STS(9): {} graphs from {} positions", cat.len(), cat.expanded);
    print!("{}", cat.to_lines());

    let cat = search::sample_and_harvest(13, 3, &limits, &SearchConfig::default())?;
    println!("three STS(13)s: {} graphs", cat.len());
    for e in cat.entries.values().filter(|e| e.graph.n() <= 3) {
        println!("  {} vertices, {} edges, seen {} times, play {}", e.graph.n(), e.graph.edge_count(), e.count, e.witness.join(","));
    }
    Ok(())
}
