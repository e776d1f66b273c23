//! Pasch switches on a hill-climbed STS(15), and moving a star leaf to U.

use nofil::constructions::{embed_star, pasch_transfer};
use nofil::design::{find_paschs, pasch_switch};
use nofil::search::{self, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ts = search::hillclimb_sts(15, &SearchConfig::default())?;
    let paschs = find_paschs(&ts);
    println!("STS(15) has {} Pasch configurations", paschs.len());
    if let Some(pc) = paschs.first() {
        let next = pasch_switch(&ts, pc)?;
        let show = |bs: [_; 4], t: &nofil::TripleSystem| bs.iter().map(|b| t.block_label(b)).collect::<Vec<_>>().join(" ");
        println!("switch {} -> {}", show(pc.blocks(), &ts), show(pc.switched_blocks(), &next));
        println!("now {} configurations", find_paschs(&next).len());
    }

    let e = embed_star(8)?;
    let moved = pasch_transfer(&e.cert)?;
    println!(
        "star on 8 vertices in STS({}) -> {} vertices, {} edges",
        e.v,
        moved.graph.n(),
        moved.graph.edge_count()
    );
    Ok(())
}
