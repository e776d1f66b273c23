//! Edge colouring and the chromatic index.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::LabeledGraph;

/// Largest component size (in edges) for which a failed heuristic search is
/// settled by exhaustive backtracking.
const EXACT_EDGE_LIMIT: usize = 80;
const HEURISTIC_ROUNDS: u64 = 24;

/// The edge-chromatic number. Components are handled separately; complete,
/// bipartite and overfull components use closed forms, others a seeded
/// Kempe-chain search for a Δ-colouring backed by exhaustive search on small
/// components.
pub fn chromatic_index(g: &LabeledGraph) -> usize {
    components(g).iter().map(|c| component_index(c)).max().unwrap_or(0)
}

/// A proper edge colouring with `k` colours, parallel to `g.edges()`, if one
/// is found. Exhaustive (and so definitive) only for small graphs.
pub fn edge_colouring(g: &LabeledGraph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let edges = g.edges().to_vec();
    if edges.is_empty() {
        return Some(Vec::new());
    }
    if k < g.max_degree() {
        return None;
    }
    for round in 0..HEURISTIC_ROUNDS {
        if let Some(c) = kempe_colouring(n, &edges, k, round) {
            return Some(c);
        }
    }
    if edges.len() <= EXACT_EDGE_LIMIT {
        return exact_colouring(n, &edges, k);
    }
    None
}

/// Every edge gets a colour below `k` and no two edges at a vertex share one.
pub fn is_proper_colouring(g: &LabeledGraph, colours: &[usize], k: usize) -> bool {
    if colours.len() != g.edge_count() {
        return false;
    }
    let mut seen = vec![vec![false; k]; g.n()];
    for (&(x, y), &c) in g.edges().iter().zip(colours) {
        if c >= k || seen[x][c] || seen[y][c] {
            return false;
        }
        seen[x][c] = true;
        seen[y][c] = true;
    }
    true
}

struct Component {
    n: usize,
    edges: Vec<(usize, usize)>,
}

fn components(g: &LabeledGraph) -> Vec<Component> {
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX || g.degree(s) == 0 {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &y in g.neighbors(x) {
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    members.push(y);
                }
            }
            i += 1;
        }
        let mut local = vec![usize::MAX; n];
        for (i, &x) in members.iter().enumerate() {
            local[x] = i;
        }
        let edges = g
            .edges()
            .iter()
            .filter(|&&(x, _)| comp[x] == id)
            .map(|&(x, y)| (local[x], local[y]))
            .collect();
        out.push(Component { n: members.len(), edges });
    }
    out
}

fn component_index(c: &Component) -> usize {
    let m = c.edges.len();
    let mut deg = vec![0usize; c.n];
    for &(x, y) in &c.edges {
        deg[x] += 1;
        deg[y] += 1;
    }
    let delta = deg.iter().copied().max().unwrap_or(0);
    if m == 0 {
        return 0;
    }
    if m == c.n * (c.n - 1) / 2 {
        return if c.n % 2 == 0 { c.n - 1 } else { c.n };
    }
    if bipartite(c.n, &c.edges) {
        return delta;
    }
    if m > delta * (c.n / 2) {
        return delta + 1;
    }
    for round in 0..HEURISTIC_ROUNDS {
        if kempe_colouring(c.n, &c.edges, delta, round).is_some() {
            return delta;
        }
    }
    if m <= EXACT_EDGE_LIMIT && exact_colouring(c.n, &c.edges, delta).is_some() {
        return delta;
    }
    delta + 1
}

fn bipartite(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(x, y) in edges {
        adj[x].push(y);
        adj[y].push(x);
    }
    let mut side = vec![2u8; n];
    for s in 0..n {
        if side[s] != 2 {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if side[y] == 2 {
                    side[y] = 1 - side[x];
                    stack.push(y);
                } else if side[y] == side[x] {
                    return false;
                }
            }
        }
    }
    true
}

const NONE: usize = usize::MAX;

/// Randomised recolouring: colour edges one at a time, flipping an
/// alternating path when the free colours at the two ends differ, and
/// evicting a random conflicting edge when the path closes up.
fn kempe_colouring(n: usize, edges: &[(usize, usize)], k: usize, round: u64) -> Option<Vec<usize>> {
    if k == 0 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de ^ round);
    // at[x][c] = index of edge with colour c at x
    let mut at = vec![vec![NONE; k]; n];
    let mut colour = vec![NONE; edges.len()];
    let mut queue: Vec<usize> = (0..edges.len()).collect();
    let budget = 200 * edges.len() + 10_000;
    let mut steps = 0;
    while let Some(e) = queue.pop() {
        steps += 1;
        if steps > budget {
            return None;
        }
        let (x, y) = edges[e];
        if let Some(c) = (0..k).find(|&c| at[x][c] == NONE && at[y][c] == NONE) {
            set(&mut at, &mut colour, edges, e, c);
            continue;
        }
        let free_x: Vec<usize> = (0..k).filter(|&c| at[x][c] == NONE).collect();
        let free_y: Vec<usize> = (0..k).filter(|&c| at[y][c] == NONE).collect();
        let (Some(&alpha), Some(&beta)) = (free_x.choose(&mut rng), free_y.choose(&mut rng)) else {
            return None;
        };
        // alpha is free at x, used at y; flip the alpha/beta path from y.
        let path = kempe_path(&at, edges, y, alpha, beta);
        let ends_at_x = path.iter().any(|&f| {
            let (p, q) = edges[f];
            p == x || q == x
        });
        if !ends_at_x && rng.random_bool(0.9) {
            flip(&mut at, &mut colour, edges, &path, alpha, beta);
            set(&mut at, &mut colour, edges, e, alpha);
        } else {
            let c = *[alpha, beta].choose(&mut rng).unwrap();
            let f = if c == alpha { at[y][c] } else { at[x][c] };
            unset(&mut at, &mut colour, edges, f);
            set(&mut at, &mut colour, edges, e, c);
            queue.insert(rng.random_range(0..=queue.len()), f);
        }
    }
    Some(colour)
}

fn set(at: &mut [Vec<usize>], colour: &mut [usize], edges: &[(usize, usize)], e: usize, c: usize) {
    let (x, y) = edges[e];
    at[x][c] = e;
    at[y][c] = e;
    colour[e] = c;
}

fn unset(at: &mut [Vec<usize>], colour: &mut [usize], edges: &[(usize, usize)], e: usize) {
    let (x, y) = edges[e];
    let c = colour[e];
    at[x][c] = NONE;
    at[y][c] = NONE;
    colour[e] = NONE;
}

fn kempe_path(at: &[Vec<usize>], edges: &[(usize, usize)], start: usize, first: usize, second: usize) -> Vec<usize> {
    let mut path = Vec::new();
    let mut cur = start;
    let mut c = first;
    loop {
        let e = at[cur][c];
        if e == NONE || path.contains(&e) {
            break;
        }
        path.push(e);
        let (p, q) = edges[e];
        cur = if p == cur { q } else { p };
        c = if c == first { second } else { first };
    }
    path
}

fn flip(at: &mut [Vec<usize>], colour: &mut [usize], edges: &[(usize, usize)], path: &[usize], a: usize, b: usize) {
    for &e in path {
        unset(at, colour, edges, e);
    }
    let mut c = b;
    for &e in path {
        set(at, colour, edges, e, c);
        c = if c == a { b } else { a };
    }
}

/// Exhaustive search: edges by descending degree sum, colours ascending, a
/// new colour only ever the next unused one.
fn exact_colouring(n: usize, edges: &[(usize, usize)], k: usize) -> Option<Vec<usize>> {
    let mut deg = vec![0usize; n];
    for &(x, y) in edges {
        deg[x] += 1;
        deg[y] += 1;
    }
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&e| std::cmp::Reverse(deg[edges[e].0] + deg[edges[e].1]));
    let mut used = vec![0u64; n];
    let mut colour = vec![NONE; edges.len()];
    fn go(
        i: usize,
        order: &[usize],
        edges: &[(usize, usize)],
        k: usize,
        max_used: usize,
        used: &mut [u64],
        colour: &mut [usize],
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let e = order[i];
        let (x, y) = edges[e];
        let limit = k.min(max_used + 1);
        for c in 0..limit {
            let bit = 1u64 << c;
            if used[x] & bit != 0 || used[y] & bit != 0 {
                continue;
            }
            used[x] |= bit;
            used[y] |= bit;
            colour[e] = c;
            if go(i + 1, order, edges, k, max_used.max(c + 1), used, colour) {
                return true;
            }
            used[x] &= !bit;
            used[y] &= !bit;
        }
        false
    }
    if k > 64 {
        return None;
    }
    go(0, &order, edges, k, 0, &mut used, &mut colour).then_some(colour)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::graph::{graph_family, GraphFamily};

    fn check(g: &LabeledGraph, k: usize) {
        let c = edge_colouring(g, k).expect("colouring exists");
        assert!(is_proper_colouring(g, &c, k));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(chromatic_index(&graph_family(GraphFamily::Complete, 5).unwrap()), 5);
        assert_eq!(chromatic_index(&graph_family(GraphFamily::Complete, 6).unwrap()), 5);
        assert_eq!(chromatic_index(&graph_family(GraphFamily::Star, 7).unwrap()), 6);
        assert_eq!(chromatic_index(&graph_family(GraphFamily::Cycle, 5).unwrap()), 3);
        assert_eq!(chromatic_index(&graph_family(GraphFamily::Cycle, 4).unwrap()), 2);
        assert_eq!(chromatic_index(&graph_family(GraphFamily::Path, 5).unwrap()), 2);
        assert_eq!(chromatic_index(&graph_family(GraphFamily::Empty, 5).unwrap()), 0);
    }

    #[test]
    fn petersen_is_class_two() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = LabeledGraph::numbered(10, outer.chain(spokes).chain(inner)).unwrap();
        assert_eq!(chromatic_index(&g), 4);
        assert!(edge_colouring(&g, 3).is_none());
    }

    #[test]
    fn complements_of_paths_and_cycles() {
        for n in 4..=30 {
            let pc = graph_family(GraphFamily::Path, n).unwrap().complement();
            let k = chromatic_index(&pc);
            assert_eq!(k, pc.max_degree(), "path complement {n}");
            check(&pc, k);
            if n >= 5 {
                let cc = graph_family(GraphFamily::Cycle, n).unwrap().complement();
                let expect = if n % 2 == 1 { n - 2 } else { n - 3 };
                assert_eq!(chromatic_index(&cc), expect, "cycle complement {n}");
            }
        }
    }

    #[test]
    fn kempe_matches_exact_on_small_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.random_range(3..8);
            let mut edges = Vec::new();
            for x in 0..n {
                for y in x + 1..n {
                    if rng.random_bool(0.5) {
                        edges.push((x, y));
                    }
                }
            }
            let g = LabeledGraph::numbered(n, edges.clone()).unwrap();
            let delta = g.max_degree();
            let exact = if edges.is_empty() {
                0
            } else if exact_colouring(n, &edges, delta).is_some() {
                delta
            } else {
                delta + 1
            };
            assert_eq!(chromatic_index(&g), exact);
        }
    }
}
