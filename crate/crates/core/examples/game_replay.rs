//! Plays 1, 2, 6, 4 on the STS(9) and prints each position.

use nofil::design::fixtures;
use nofil::game;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ts = fixtures::sts9();
    let mut state = game::new_game(&ts)?;
    for m in ["1", "2", "6", "4"] {
        state = state.play_label(m)?;
        println!(
            "played {m}: P={:?} A={:?} U={:?} hyperedges={:?}",
            state.labels(state.played()),
            state.labels(&state.available()),
            state.labels(&state.unplayable()),
            state.hyperedge_labels()
        );
        if let Some(g) = state.graph() {
            println!("  available hypergraph is a graph with {} edges", g.edge_count());
        }
    }
    println!("game over: {}", state.is_over());
    Ok(())
}
