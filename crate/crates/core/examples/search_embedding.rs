//! Randomized search for P_5 at the smallest order the bounds allow.

use nofil::design::{graph_family, GraphFamily};
use nofil::search::{self, SearchConfig};

fn main() {
    let g = graph_family(GraphFamily::Path, 5).unwrap();
    let cfg = SearchConfig { seed: 1, restarts: 20, ..SearchConfig::default() };
    let res = search::search_min_embedding(&g, 21, &cfg);
    for r in &res.log {
        println!("{r}");
    }
    match res.certificate {
        Some(c) => println!(
            "P_5 in STS({}) with (p,a,u) = ({},{},{})",
            c.ts.v(),
            c.partition.p(),
            c.partition.a(),
            c.partition.u()
        ),
        None => println!("nothing found up to 21"),
    }
}
