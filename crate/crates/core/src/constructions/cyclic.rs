//! Cyclic Steiner triple systems from difference triples.

use crate::skolem::{self, SequenceKind};

use super::orbit::{expand_orbits, CyclicPresentation};
use super::ConstructionError;

/// Base blocks over `Z_v` of a cyclic STS(v). For `v = 6t+1` they come from a
/// Skolem or hooked Skolem sequence of order `t` as `{0, r, b_r + t}`; for
/// `v = 6t+3` the last block is the short orbit `{0, 2t+1, 4t+2}` and the
/// rest come from a search over difference triples. There is no cyclic
/// STS(9).
pub fn cyclic_sts_base_blocks(v: u32) -> Result<Vec<[u32; 3]>, ConstructionError> {
    if v % 6 != 1 && v % 6 != 3 {
        return Err(ConstructionError::InvalidParameter(format!("v={v} is not 1 or 3 mod 6")));
    }
    if v == 1 {
        return Ok(Vec::new());
    }
    if v % 6 == 1 {
        let t = (v - 1) / 6;
        let kind = if t % 4 <= 1 { SequenceKind::Skolem } else { SequenceKind::Hooked };
        if let Ok(seq) = skolem::generate(kind, t, 1, 0) {
            let blocks: Vec<[u32; 3]> = (1..=t).map(|r| [0, r, seq.pair(r).unwrap().1 + t]).collect();
            if expands(v, &blocks) {
                return Ok(blocks);
            }
        }
    }
    let mut blocks = difference_triples(v).ok_or(ConstructionError::NoPresentation(v))?;
    if v % 6 == 3 {
        let t = (v - 3) / 6;
        blocks.push([0, 2 * t + 1, 4 * t + 2]);
    }
    if !expands(v, &blocks) {
        return Err(ConstructionError::NoPresentation(v));
    }
    Ok(blocks)
}

fn expands(v: u32, blocks: &[[u32; 3]]) -> bool {
    let base: Vec<[i64; 3]> = blocks.iter().map(|b| b.map(i64::from)).collect();
    expand_orbits(&CyclicPresentation::flat(v, &base)).is_ok()
}

/// Partition of the differences `1..=(v-1)/2` (minus `v/3` when `3 | v`) into
/// triples `{d, e, f}` with `d + e = f` or `d + e + f = v`, returned as base
/// blocks `{0, d, d+e}`.
fn difference_triples(v: u32) -> Option<Vec<[u32; 3]>> {
    let half = (v - 1) / 2;
    let mut free = vec![false; half as usize + 1];
    for d in 1..=half {
        free[d as usize] = v % 3 != 0 || d != v / 3;
    }
    let mut out = Vec::new();
    let mut budget = 5_000_000u64;
    dt_search(v, &mut free, &mut out, &mut budget).then_some(out)
}

fn dt_search(v: u32, free: &mut [bool], out: &mut Vec<[u32; 3]>, budget: &mut u64) -> bool {
    // the largest free difference has the fewest completions, so it goes first
    let Some(d) = (1..free.len()).rev().find(|&d| free[d]) else { return true };
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let d = d as u32;
    free[d as usize] = false;
    for e in (1..d).rev() {
        if !free[e as usize] {
            continue;
        }
        // {e, d-e, d} with e + (d-e) = d, or {d, e, v-d-e} summing to v
        for (f, block) in [(d - e, [0, e, d]), (v.saturating_sub(d + e), [0, d, d + e])] {
            if f == 0 || f == e || f == d || f as usize >= free.len() || !free[f as usize] {
                continue;
            }
            free[e as usize] = false;
            free[f as usize] = false;
            out.push(block);
            if dt_search(v, free, out, budget) {
                return true;
            }
            out.pop();
            free[e as usize] = true;
            free[f as usize] = true;
        }
    }
    free[d as usize] = true;
    false
}

/// Blocks of some STS(v) on `0..v`: a cyclic system when one exists, and the
/// affine plane of order 3 for `v = 9`.
pub fn sts_blocks(v: u32) -> Result<Vec<[u32; 3]>, ConstructionError> {
    if v == 9 {
        return Ok(AFFINE_PLANE.to_vec());
    }
    let base = cyclic_sts_base_blocks(v)?;
    let cp = CyclicPresentation::flat(v, &base.iter().map(|b| b.map(i64::from)).collect::<Vec<_>>());
    Ok(cp.expanded_blocks()?.iter().map(|b| b.points()).collect())
}

pub const AFFINE_PLANE: [[u32; 3]; 12] = [
    [0, 1, 2],
    [3, 4, 5],
    [6, 7, 8],
    [0, 3, 6],
    [1, 4, 7],
    [2, 5, 8],
    [0, 4, 8],
    [1, 5, 6],
    [2, 3, 7],
    [0, 5, 7],
    [1, 3, 8],
    [2, 4, 6],
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{Block, TripleSystem};

    #[test]
    fn small_orders() {
        assert_eq!(cyclic_sts_base_blocks(7).unwrap().len(), 1);
        let b13 = cyclic_sts_base_blocks(13).unwrap();
        assert_eq!(b13.len(), 2);
        let cp = CyclicPresentation::flat(13, &b13.iter().map(|b| b.map(i64::from)).collect::<Vec<_>>());
        assert_eq!(cp.expanded_blocks().unwrap().len(), 26);
        assert_eq!(cyclic_sts_base_blocks(3).unwrap(), [[0, 1, 2]]);
        assert!(matches!(cyclic_sts_base_blocks(9), Err(ConstructionError::NoPresentation(9))));
        assert!(cyclic_sts_base_blocks(11).is_err());
    }

    #[test]
    fn every_order_up_to_99() {
        for v in (7..=99).filter(|v| v % 6 == 1 || v % 6 == 3) {
            let blocks = sts_blocks(v).unwrap();
            let labels = (0..v).map(|x| x.to_string()).collect();
            let ts = TripleSystem::new(labels, blocks.iter().map(|b| Block::new(b[0], b[1], b[2]).unwrap())).unwrap();
            assert!(ts.is_sts(), "v={v}");
            if v != 9 {
                let base = cyclic_sts_base_blocks(v).unwrap();
                if v % 6 == 3 {
                    let t = (v - 3) / 6;
                    assert_eq!(base.last().unwrap(), &[0, 2 * t + 1, 4 * t + 2]);
                }
            }
        }
    }
}
