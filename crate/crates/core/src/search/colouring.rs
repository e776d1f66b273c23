//! Equitable edge colourings: proper colourings whose class sizes differ by
//! at most one.

use crate::design::colour::edge_colouring;
use crate::design::LabeledGraph;

use super::SearchError;

/// Splits the edges of `g` into `k` matchings of near-equal size. Classes are
/// lists of vertex-index pairs.
pub fn equitable_edge_colouring(g: &LabeledGraph, k: usize) -> Result<Vec<Vec<(usize, usize)>>, SearchError> {
    let edges = g.edges();
    if edges.is_empty() {
        return Ok(vec![Vec::new(); k]);
    }
    if k == 0 {
        return Err(SearchError::Colouring(format!("{} edges need at least one colour", edges.len())));
    }
    let mut colour = edge_colouring(g, k)
        .ok_or_else(|| SearchError::Colouring(format!("no proper edge colouring with {k} colours")))?;
    rebalance(g.n(), edges, &mut colour, k);
    let mut classes = vec![Vec::new(); k];
    for (&e, &c) in edges.iter().zip(&colour) {
        classes[c].push(e);
    }
    Ok(classes)
}

/// Swaps colours along alternating paths until the largest and smallest
/// classes differ by at most one.
fn rebalance(n: usize, edges: &[(usize, usize)], colour: &mut [usize], k: usize) {
    loop {
        let mut size = vec![0usize; k];
        for &c in colour.iter() {
            size[c] += 1;
        }
        let big = (0..k).max_by_key(|&c| size[c]).unwrap();
        let small = (0..k).min_by_key(|&c| size[c]).unwrap();
        if size[big] <= size[small] + 1 {
            return;
        }
        // at[v][0] = edge of colour `big` at v, at[v][1] = edge of colour `small`
        let mut at = vec![[usize::MAX; 2]; n];
        for (i, &(x, y)) in edges.iter().enumerate() {
            let side = if colour[i] == big {
                0
            } else if colour[i] == small {
                1
            } else {
                continue;
            };
            at[x][side] = i;
            at[y][side] = i;
        }
        let mut seen = vec![false; edges.len()];
        let mut swapped = false;
        for start in 0..edges.len() {
            if colour[start] != big || seen[start] {
                continue;
            }
            let comp = component(edges, &at, start, &mut seen);
            let nb = comp.iter().filter(|&&i| colour[i] == big).count();
            if 2 * nb > comp.len() {
                for &i in &comp {
                    colour[i] = if colour[i] == big { small } else { big };
                }
                swapped = true;
                break;
            }
        }
        if !swapped {
            // cannot happen: a component with more `big` edges always exists
            return;
        }
    }
}

fn component(edges: &[(usize, usize)], at: &[[usize; 2]], start: usize, seen: &mut [bool]) -> Vec<usize> {
    let mut out = vec![start];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(e) = stack.pop() {
        let (x, y) = edges[e];
        for v in [x, y] {
            for &f in &at[v] {
                if f != usize::MAX && !seen[f] {
                    seen[f] = true;
                    out.push(f);
                    stack.push(f);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{graph_family, GraphFamily};

    fn check(g: &LabeledGraph, k: usize) -> Vec<usize> {
        let classes = equitable_edge_colouring(g, k).unwrap();
        assert_eq!(classes.len(), k);
        let mut all: Vec<_> = classes.iter().flatten().copied().collect();
        all.sort_unstable();
        let mut want = g.edges().to_vec();
        want.sort_unstable();
        assert_eq!(all, want);
        for c in &classes {
            let mut vs: Vec<usize> = c.iter().flat_map(|&(x, y)| [x, y]).collect();
            vs.sort_unstable();
            vs.dedup();
            assert_eq!(vs.len(), 2 * c.len(), "class is not a matching");
        }
        let sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1, "{sizes:?}");
        sizes
    }

    #[test]
    fn small_cases() {
        assert_eq!(check(&graph_family(GraphFamily::Complete, 5).unwrap(), 5), vec![2; 5]);
        assert_eq!(check(&graph_family(GraphFamily::Star, 5).unwrap(), 4), vec![1; 4]);
        assert_eq!(check(&graph_family(GraphFamily::Cycle, 6).unwrap(), 2), vec![3; 2]);
        check(&graph_family(GraphFamily::Complete, 8).unwrap(), 7);
        check(&graph_family(GraphFamily::Complete, 8).unwrap(), 20);
        check(&graph_family(GraphFamily::Path, 9).unwrap(), 5);
    }

    #[test]
    fn too_few_colours() {
        assert!(equitable_edge_colouring(&graph_family(GraphFamily::Complete, 5).unwrap(), 4).is_err());
        assert!(equitable_edge_colouring(&graph_family(GraphFamily::Star, 5).unwrap(), 3).is_err());
    }
}
