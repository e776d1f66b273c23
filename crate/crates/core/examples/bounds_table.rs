//! Smallest admissible orders for paths, then every inequality for one row.

use nofil::bounds::{self, GraphProfile};
use nofil::design::GraphFamily;

fn main() {
    let table = bounds::family_table(GraphFamily::Path, 2, 12);
    print!("{}", bounds::format_table(GraphFamily::Path, &table));

    let prof = GraphProfile::of_family(GraphFamily::Complete, 4);
    for u in 2..=3 {
        println!("{}", bounds::lemma1_bounds(13, prof.a, u, prof.e, prof.chi_g, prof.chi_complement));
    }
}
