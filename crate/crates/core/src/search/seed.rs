//! Frozen starting triples for an embedding with given `(p, a, u)`.
//!
//! Points are numbered `P = 0..p`, `A = p..p+a` (graph vertex `i` is point
//! `p+i`), `U = p+a..v`. Every pair inside P and inside A is covered by a
//! frozen block, so any completion has no PPP, PPA or AAA block and realizes
//! exactly the graph.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{self, GraphProfile};
use crate::design::{Block, EmbeddingCertificate, LabeledGraph, PointPartition, TripleSystem};

use super::colouring::equitable_edge_colouring;
use super::SearchError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedTriples {
    pub p: usize,
    pub a: usize,
    pub u: usize,
    pub graph: LabeledGraph,
    pub ppu: Vec<[u32; 3]>,
    pub paa: Vec<[u32; 3]>,
    pub aau: Vec<[u32; 3]>,
}

impl SeedTriples {
    pub fn v(&self) -> usize {
        self.p + self.a + self.u
    }

    pub fn frozen(&self) -> impl Iterator<Item = [u32; 3]> + '_ {
        self.ppu.iter().chain(&self.paa).chain(&self.aau).copied()
    }

    /// Point labels: `p1..`, the graph's own vertex labels, `u1..`.
    pub fn labels(&self) -> Vec<String> {
        let mut l: Vec<String> = (1..=self.p).map(|i| format!("p{i}")).collect();
        l.extend(self.graph.vertices().iter().cloned());
        l.extend((1..=self.u).map(|i| format!("u{i}")));
        l
    }

    pub fn partition(&self) -> PointPartition {
        let (p, a) = (self.p as u32, self.a as u32);
        let v = self.v() as u32;
        let pp: Vec<u32> = (0..p).collect();
        let aa: Vec<u32> = (p..p + a).collect();
        let uu: Vec<u32> = (p + a..v).collect();
        PointPartition::new(self.v(), &pp, &aa, &uu).expect("ranges partition the points")
    }

    /// No two frozen blocks share a pair.
    pub fn pair_disjoint(&self) -> bool {
        let v = self.v();
        let mut seen = vec![false; v * v];
        for b in self.frozen() {
            for (x, y) in [(b[0], b[1]), (b[0], b[2]), (b[1], b[2])] {
                let (x, y) = (x.min(y) as usize, x.max(y) as usize);
                if x == y || seen[x * v + y] {
                    return false;
                }
                seen[x * v + y] = true;
            }
        }
        true
    }

    /// The certificate for a completed system on these points.
    pub fn certificate(&self, blocks: Vec<Block>) -> Result<EmbeddingCertificate, SearchError> {
        let ts = TripleSystem::new(self.labels(), blocks)?;
        Ok(EmbeddingCertificate::new(ts, self.partition(), self.graph.clone())?)
    }
}

/// Colours `K_p` with `u` classes (class `i` on U point `i`), `E(g)` with `p`
/// classes (class `j` on P point `j`) and the complement's edges with `u`
/// classes (class `i` on U point `i`). Which class goes to which point is
/// shuffled by `rng`.
pub fn build_seed_triples(g: &LabeledGraph, p: usize, u: usize, rng: &mut ChaCha8Rng) -> Result<SeedTriples, SearchError> {
    let a = g.n();
    let v = (p + a + u) as u64;
    let profile = GraphProfile::of_graph(g);
    if !bounds::rows_at(&profile, v).iter().any(|r| r.p == p as u64 && r.u == u as u64) {
        return Err(SearchError::Inadmissible { v, p, u });
    }
    if u > p * p.saturating_sub(1) / 2 {
        return Err(SearchError::Colouring(format!("K_{p} has fewer than {u} edges")));
    }
    let kp = LabeledGraph::numbered(p, (0..p).flat_map(|x| (x + 1..p).map(move |y| (x, y))))?;
    let mut ppu_classes = equitable_edge_colouring(&kp, u)?;
    let mut paa_classes = equitable_edge_colouring(g, p)?;
    let mut aau_classes = equitable_edge_colouring(&g.complement(), u)?;
    if ppu_classes.iter().any(Vec::is_empty) {
        return Err(SearchError::Colouring(format!("an equitable {u}-colouring of K_{p} leaves a class empty")));
    }
    ppu_classes.shuffle(rng);
    paa_classes.shuffle(rng);
    aau_classes.shuffle(rng);

    let (po, ao, uo) = (0u32, p as u32, (p + a) as u32);
    let mut seed = SeedTriples { p, a, u, graph: g.clone(), ppu: Vec::new(), paa: Vec::new(), aau: Vec::new() };
    for (i, class) in ppu_classes.iter().enumerate() {
        seed.ppu.extend(class.iter().map(|&(x, y)| [po + x as u32, po + y as u32, uo + i as u32]));
    }
    for (j, class) in paa_classes.iter().enumerate() {
        seed.paa.extend(class.iter().map(|&(x, y)| [po + j as u32, ao + x as u32, ao + y as u32]));
    }
    for (i, class) in aau_classes.iter().enumerate() {
        seed.aau.extend(class.iter().map(|&(x, y)| [ao + x as u32, ao + y as u32, uo + i as u32]));
    }
    debug_assert!(seed.pair_disjoint());
    Ok(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{graph_family, GraphFamily};
    use rand::SeedableRng;

    #[test]
    fn path_five_at_fifteen() {
        let g = graph_family(GraphFamily::Path, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = build_seed_triples(&g, 4, 6, &mut rng).unwrap();
        assert_eq!((s.ppu.len(), s.paa.len(), s.aau.len()), (6, 4, 6));
        assert!(s.pair_disjoint());
        let mut with_ppu = vec![false; s.v()];
        for b in &s.ppu {
            with_ppu[b[2] as usize] = true;
        }
        assert!(with_ppu[s.p + s.a..].iter().all(|&x| x));
    }

    #[test]
    fn rejects_inadmissible_rows() {
        let g = graph_family(GraphFamily::Complete, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(build_seed_triples(&g, 2, 2, &mut rng).is_err());
    }
}
