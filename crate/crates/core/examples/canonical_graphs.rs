use nofil::design::{canonical_form, chromatic_index, graph_family, GraphFamily, LabeledGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c5 = graph_family(GraphFamily::Cycle, 5)?;
    let shuffled = LabeledGraph::numbered(5, [(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)])?;
    println!("C_5 {}", canonical_form(&c5)?);
    println!("same cycle relabelled {}", canonical_form(&shuffled)?);
    for f in [GraphFamily::Complete, GraphFamily::Cycle, GraphFamily::Path] {
        for a in [5, 6] {
            let g = graph_family(f, a)?;
            println!("{} {a}: chi' = {}, complement chi' = {}", f.name(), chromatic_index(&g), chromatic_index(&g.complement()));
        }
    }
    Ok(())
}
