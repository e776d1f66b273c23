//! Canonical strings for small graphs.
//!
//! The key is the lexicographically smallest upper-triangle adjacency string
//! over the leaves of an individualisation-refinement tree. The initial cells
//! are the degree classes; twin vertices are branched on only once.

use super::graph::LabeledGraph;
use super::DesignError;

pub const DEFAULT_MAX_VERTICES: usize = 12;
const HARD_MAX_VERTICES: usize = 64;

/// Canonical form with the default vertex cap.
pub fn canonical_form(g: &LabeledGraph) -> Result<String, DesignError> {
    canonical_form_capped(g, DEFAULT_MAX_VERTICES)
}

pub fn canonical_form_capped(g: &LabeledGraph, max_vertices: usize) -> Result<String, DesignError> {
    let max = max_vertices.min(HARD_MAX_VERTICES);
    if g.n() > max {
        return Err(DesignError::TooLarge { n: g.n(), max });
    }
    let adj: Vec<u64> = (0..g.n())
        .map(|x| g.neighbors(x).iter().fold(0u64, |m, &y| m | (1 << y)))
        .collect();
    let order = canonical_order(&adj);
    Ok(encode(&adj, &order))
}

/// A vertex order realising the canonical form; `order[i]` is the vertex
/// placed at position `i`.
pub fn canonical_labeling(g: &LabeledGraph) -> Result<Vec<usize>, DesignError> {
    if g.n() > HARD_MAX_VERTICES {
        return Err(DesignError::TooLarge { n: g.n(), max: HARD_MAX_VERTICES });
    }
    let adj: Vec<u64> = (0..g.n())
        .map(|x| g.neighbors(x).iter().fold(0u64, |m, &y| m | (1 << y)))
        .collect();
    Ok(canonical_order(&adj))
}

fn encode(adj: &[u64], order: &[usize]) -> String {
    let n = order.len();
    let bits = upper_bits(adj, order);
    let mut s = format!("{n}:");
    for chunk in bits.chunks(4) {
        let mut nib = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            if b {
                nib |= 8 >> i;
            }
        }
        s.push(char::from_digit(nib as u32, 16).unwrap());
    }
    s
}

// Column-major upper triangle: for j in 1..n, for i in 0..j.
fn upper_bits(adj: &[u64], order: &[usize]) -> Vec<bool> {
    let n = order.len();
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(adj[order[i]] >> order[j] & 1 == 1);
        }
    }
    bits
}

fn canonical_order(adj: &[u64]) -> Vec<usize> {
    let n = adj.len();
    if n == 0 {
        return Vec::new();
    }
    let mut degree_cells: Vec<Vec<usize>> = Vec::new();
    let mut by_degree: Vec<(u32, usize)> = (0..n).map(|x| (adj[x].count_ones(), x)).collect();
    by_degree.sort_unstable();
    for (d, x) in by_degree {
        match degree_cells.last_mut() {
            Some(cell) if adj[cell[0]].count_ones() == d => cell.push(x),
            _ => degree_cells.push(vec![x]),
        }
    }
    let start = refine(adj, degree_cells);
    let mut best: Option<(Vec<bool>, Vec<usize>)> = None;
    search(adj, start, &mut best);
    best.expect("search visits at least one leaf").1
}

fn search(adj: &[u64], cells: Vec<Vec<usize>>, best: &mut Option<(Vec<bool>, Vec<usize>)>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let bits = upper_bits(adj, &order);
        if best.as_ref().is_none_or(|(b, _)| bits < *b) {
            *best = Some((bits, order));
        }
        return;
    };
    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &x in cell {
        if tried.iter().any(|&t| are_twins(adj, t, x)) {
            continue;
        }
        tried.push(x);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![x]);
        next.push(cell.iter().copied().filter(|&y| y != x).collect());
        next.extend_from_slice(&cells[target + 1..]);
        search(adj, refine(adj, next), best);
    }
}

fn are_twins(adj: &[u64], x: usize, y: usize) -> bool {
    let mask = !((1u64 << x) | (1u64 << y));
    adj[x] & mask == adj[y] & mask
}

/// Equitable refinement; cells are split by the multiset of neighbour cell
/// counts, new cells ordered by that signature.
fn refine(adj: &[u64], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| c.iter().fold(0u64, |m, &x| m | (1 << x))).collect();
        let mut next = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&x| (masks.iter().map(|m| (adj[x] & m).count_ones()).collect(), x))
                .collect();
            keyed.sort();
            next.push(vec![keyed[0].1]);
            for w in 1..keyed.len() {
                if keyed[w].0 != keyed[w - 1].0 {
                    next.push(Vec::new());
                    changed = true;
                }
                next.last_mut().unwrap().push(keyed[w].1);
            }
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}
