//! Moving one available point to U by a Pasch switch.

use crate::design::{verify_embedding, Block, EmbeddingCertificate, LabeledGraph, Point, Role};

use super::ConstructionError;

/// Looks for a Pasch configuration `{u,v,z}, {u,y,w}, {x,v,w}, {x,y,z}` with
/// `v, w` in P, `u` in A and `x, y, z` in U. Switching it to
/// `{u,v,w}, {u,y,z}, {x,v,z}, {x,y,w}` puts `u` on a block with two played
/// points, so `u` becomes unplayable and its edges leave the graph. The first
/// switch whose result verifies is returned, trying points of small degree
/// first.
pub fn pasch_transfer(cert: &EmbeddingCertificate) -> Result<EmbeddingCertificate, ConstructionError> {
    let ts = &cert.ts;
    let part = &cert.partition;
    let is_u = |x: Point| part.role(x) == Role::Unplayable;
    let played = part.played();
    let degree = |x: Point| cert.vertex_of(x).map_or(0, |i| cert.graph.degree(i));
    let mut candidates = part.available().to_vec();
    candidates.sort_by_key(|&x| degree(x));
    for u in candidates {
        for (i, &v) in played.iter().enumerate() {
            for &w in &played[i + 1..] {
                let (Some(x), Some(z), Some(y)) = (ts.third(v, w), ts.third(u, v), ts.third(u, w)) else { continue };
                if !(is_u(x) && is_u(y) && is_u(z)) || ts.third(y, z) != Some(x) {
                    continue;
                }
                let blk = |a, b, c| Block::new(a, b, c).expect("pasch points are distinct");
                let old = [blk(u, v, z), blk(u, y, w), blk(x, v, w), blk(x, y, z)];
                let new = [blk(u, v, w), blk(u, y, z), blk(x, v, z), blk(x, y, w)];
                let switched = ts.with_blocks(ts.blocks().iter().copied().filter(|b| !old.contains(b)).chain(new))?;
                let partition = part.with_role(u, Role::Unplayable);
                let graph = without_vertex(&cert.graph, ts.label(u))?;
                let next = EmbeddingCertificate::new(switched, partition, graph)?;
                if verify_embedding(&next)?.ok() {
                    return Ok(next);
                }
            }
        }
    }
    Err(ConstructionError::NotFound("no Pasch joins an available point to two played points".into()))
}

fn without_vertex(g: &LabeledGraph, label: &str) -> Result<LabeledGraph, ConstructionError> {
    let drop = g.vertex(label);
    let keep: Vec<usize> = (0..g.n()).filter(|&x| Some(x) != drop).collect();
    let labels: Vec<String> = keep.iter().map(|&x| g.vertices()[x].clone()).collect();
    let index = |x: usize| keep.iter().position(|&k| k == x);
    let edges = g.edges().iter().filter_map(|&(x, y)| Some((index(x)?, index(y)?)));
    Ok(LabeledGraph::new(labels, edges.collect::<Vec<_>>())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::embed_star;
    use crate::design::{fixtures, induced_certificate, Induced};

    #[test]
    fn star_loses_a_leaf() {
        let e = embed_star(8).unwrap();
        let next = pasch_transfer(&e.cert).unwrap();
        assert!(verify_embedding(&next).unwrap().ok());
        assert_eq!(next.partition.a(), 7);
        assert_eq!(next.graph.edge_count(), 6);
        assert_eq!(next.ts.v(), e.v);
    }

    #[test]
    fn nothing_to_switch_in_sts9() {
        let ts = fixtures::sts9();
        let played: Vec<u32> = ["1", "2", "6"].iter().map(|l| ts.point(l).unwrap()).collect();
        let Induced::Graph(cert) = induced_certificate(&ts, &played).unwrap() else { panic!() };
        assert!(matches!(pasch_transfer(&cert), Err(ConstructionError::NotFound(_))));
    }
}
