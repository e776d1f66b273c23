//! Point sets of the form `Z_n x copies` plus fixed points, with blocks given
//! one per orbit of the cyclic action `g(i_j) = (i+g)_j`, `g(inf_j) = inf_j`.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use crate::design::{Block, Point, TripleSystem, Violation};

use super::ConstructionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitPoint {
    /// `i_j`; `i` is reduced mod n when the presentation is expanded.
    Cyc(i64, u8),
    Fixed(u8),
}

pub use OrbitPoint::{Cyc, Fixed};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicPresentation {
    pub modulus: u32,
    pub copies: Vec<u8>,
    pub fixed_points: Vec<u8>,
    pub base_blocks: Vec<[OrbitPoint; 3]>,
    /// Blocks taken as they are, outside any orbit.
    pub fixed_blocks: Vec<[OrbitPoint; 3]>,
}

impl CyclicPresentation {
    pub fn new(modulus: u32, copies: Vec<u8>, fixed_points: Vec<u8>) -> Self {
        CyclicPresentation { modulus, copies, fixed_points, base_blocks: Vec::new(), fixed_blocks: Vec::new() }
    }

    /// A single copy of `Z_n` labelled by plain integers.
    pub fn flat(modulus: u32, base_blocks: &[[i64; 3]]) -> Self {
        let mut cp = CyclicPresentation::new(modulus, vec![0], Vec::new());
        cp.base_blocks = base_blocks.iter().map(|b| b.map(|i| Cyc(i, 0))).collect();
        cp
    }

    pub fn v(&self) -> usize {
        self.modulus as usize * self.copies.len() + self.fixed_points.len()
    }

    fn is_flat(&self) -> bool {
        self.copies.len() == 1 && self.fixed_points.is_empty()
    }

    pub fn label(&self, p: OrbitPoint) -> String {
        match p {
            Cyc(i, j) => {
                let i = i.rem_euclid(self.modulus as i64);
                if self.is_flat() {
                    i.to_string()
                } else {
                    format!("{i}_{j}")
                }
            }
            Fixed(j) if self.fixed_points.len() == 1 => {
                let _ = j;
                "inf".to_string()
            }
            Fixed(j) => format!("inf_{j}"),
        }
    }

    /// Labels in point order: each copy of `Z_n` in turn, then the fixed points.
    pub fn labels(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.v());
        for &j in &self.copies {
            for i in 0..self.modulus as i64 {
                out.push(self.label(Cyc(i, j)));
            }
        }
        for &j in &self.fixed_points {
            out.push(self.label(Fixed(j)));
        }
        out
    }

    pub fn point(&self, p: OrbitPoint) -> Result<Point, ConstructionError> {
        let n = self.modulus as i64;
        match p {
            Cyc(i, j) => {
                let c = self.copies.iter().position(|&c| c == j).ok_or_else(|| {
                    ConstructionError::InvalidParameter(format!("copy {j} is not part of the presentation"))
                })?;
                Ok((c as i64 * n + i.rem_euclid(n)) as Point)
            }
            Fixed(j) => {
                let f = self.fixed_points.iter().position(|&f| f == j).ok_or_else(|| {
                    ConstructionError::InvalidParameter(format!("fixed point inf_{j} is not part of the presentation"))
                })?;
                Ok((self.copies.len() as i64 * n) as Point + f as Point)
            }
        }
    }

    fn shift(&self, p: OrbitPoint, g: i64) -> OrbitPoint {
        match p {
            Cyc(i, j) => Cyc((i + g).rem_euclid(self.modulus as i64), j),
            f => f,
        }
    }

    fn block(&self, b: [OrbitPoint; 3]) -> Result<Block, ConstructionError> {
        let [x, y, z] = [self.point(b[0])?, self.point(b[1])?, self.point(b[2])?];
        Block::new(x, y, z).ok_or_else(|| {
            ConstructionError::InvalidParameter(format!(
                "base block {{{},{},{}}} repeats a point",
                self.label(b[0]),
                self.label(b[1]),
                self.label(b[2])
            ))
        })
    }

    /// Every block of the expanded system; orbits that repeat are collapsed.
    pub fn expanded_blocks(&self) -> Result<Vec<Block>, ConstructionError> {
        let mut out = BTreeSet::new();
        for &b in &self.base_blocks {
            for g in 0..self.modulus as i64 {
                out.insert(self.block(b.map(|p| self.shift(p, g)))?);
            }
        }
        for &b in &self.fixed_blocks {
            out.insert(self.block(b)?);
        }
        Ok(out.into_iter().collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("modulus {}\ncopies", self.modulus);
        for j in &self.copies {
            let _ = write!(out, " {j}");
        }
        out.push_str("\nfixed");
        for j in &self.fixed_points {
            let _ = write!(out, " {}", self.label(Fixed(*j)));
        }
        out.push_str("\nbase\n");
        for b in &self.base_blocks {
            let _ = writeln!(out, "{}", self.block_text(b));
        }
        if !self.fixed_blocks.is_empty() {
            out.push_str("extra\n");
            for b in &self.fixed_blocks {
                let _ = writeln!(out, "{}", self.block_text(b));
            }
        }
        out
    }

    fn block_text(&self, b: &[OrbitPoint; 3]) -> String {
        b.iter().map(|&p| self.label(p)).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for CyclicPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Expands the presentation and checks the result is a Steiner triple system.
pub fn expand_orbits(cp: &CyclicPresentation) -> Result<TripleSystem, ConstructionError> {
    if cp.modulus == 0 {
        return Err(ConstructionError::InvalidParameter("modulus must be positive".into()));
    }
    let blocks = cp.expanded_blocks()?;
    let ts = TripleSystem::new(cp.labels(), blocks)?;
    check_steiner(&ts)?;
    Ok(ts)
}

pub(crate) fn check_steiner(ts: &TripleSystem) -> Result<(), ConstructionError> {
    let report = ts.validate();
    if report.ok() {
        return Ok(());
    }
    let pair = report.violations.iter().find_map(|v| match v {
        Violation::Uncovered(x, y) | Violation::MultiplyCovered { pair: (x, y), .. } => Some((*x, *y)),
        _ => None,
    });
    Err(ConstructionError::Defect {
        pair: pair.map(|(x, y)| (ts.label(x).to_string(), ts.label(y).to_string())),
        detail: report.describe(ts),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_from_one_base_block() {
        let ts = expand_orbits(&CyclicPresentation::flat(7, &[[0, 1, 3]])).unwrap();
        assert_eq!(ts.blocks().len(), 7);
        assert!(ts.is_sts());
    }

    #[test]
    fn short_orbit_collapses() {
        let mut cp = CyclicPresentation::new(9, vec![3], Vec::new());
        cp.base_blocks.push([Cyc(0, 3), Cyc(3, 3), Cyc(6, 3)]);
        assert_eq!(cp.expanded_blocks().unwrap().len(), 3);
    }

    #[test]
    fn trivial_group_keeps_blocks() {
        let cp = CyclicPresentation::flat(1, &[]);
        assert!(cp.expanded_blocks().unwrap().is_empty());
        let mut cp = CyclicPresentation::new(1, vec![1, 2, 3], Vec::new());
        cp.base_blocks.push([Cyc(0, 1), Cyc(0, 2), Cyc(0, 3)]);
        let ts = expand_orbits(&cp).unwrap();
        assert_eq!(ts.blocks().len(), 1);
        assert_eq!(ts.labels(), ["0_1", "0_2", "0_3"]);
    }

    #[test]
    fn broken_expansion_names_a_pair() {
        let err = expand_orbits(&CyclicPresentation::flat(7, &[[0, 1, 2]])).unwrap_err();
        match err {
            ConstructionError::Defect { pair: Some(_), .. } => {}
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn negative_offsets_reduce() {
        let cp = CyclicPresentation::new(5, vec![1], vec![1, 2]);
        assert_eq!(cp.label(Cyc(-2, 1)), "3_1");
        assert_eq!(cp.label(Fixed(2)), "inf_2");
        assert_eq!(cp.point(Cyc(-1, 1)).unwrap(), 4);
        assert_eq!(cp.point(Fixed(2)).unwrap(), 6);
    }
}
