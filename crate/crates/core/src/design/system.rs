use std::collections::HashMap;
use std::fmt;

use super::DesignError;

/// Index of a point inside one [`TripleSystem`].
pub type Point = u32;

const NO_BLOCK: u32 = u32::MAX;

/// Three distinct points, stored in ascending order so that set equality is
/// plain equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block([Point; 3]);

impl Block {
    /// Returns `None` when two of the points coincide.
    pub fn new(a: Point, b: Point, c: Point) -> Option<Self> {
        let mut pts = [a, b, c];
        pts.sort_unstable();
        if pts[0] == pts[1] || pts[1] == pts[2] {
            return None;
        }
        Some(Block(pts))
    }

    pub fn points(&self) -> [Point; 3] {
        self.0
    }

    pub fn contains(&self, x: Point) -> bool {
        self.0.contains(&x)
    }

    /// The point of the block other than `x` and `y`.
    pub fn third(&self, x: Point, y: Point) -> Option<Point> {
        if !(self.contains(x) && self.contains(y)) || x == y {
            return None;
        }
        self.0.iter().copied().find(|&z| z != x && z != y)
    }

    /// The three 2-subsets, each as an ordered pair `(lo, hi)`.
    pub fn pairs(&self) -> [(Point, Point); 3] {
        let [a, b, c] = self.0;
        [(a, b), (a, c), (b, c)]
    }
}

/// A point set with a set of 3-element blocks.
///
/// Construction checks the structural invariants only (labels unique and
/// well-formed, blocks in range). Whether the blocks form a Steiner triple
/// system is answered by [`TripleSystem::validate`].
#[derive(Clone, Debug)]
pub struct TripleSystem {
    labels: Vec<String>,
    index: HashMap<String, Point>,
    blocks: Vec<Block>,
    // v*v table: index of the first block covering each pair.
    pair_block: Vec<u32>,
}

impl PartialEq for TripleSystem {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.blocks == other.blocks
    }
}

impl Eq for TripleSystem {}

pub(crate) fn check_label(label: &str) -> Result<(), DesignError> {
    if label.is_empty() || label.chars().any(char::is_whitespace) {
        return Err(DesignError::BadLabel(label.to_string()));
    }
    Ok(())
}

impl TripleSystem {
    pub fn new(labels: Vec<String>, blocks: impl IntoIterator<Item = Block>) -> Result<Self, DesignError> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            check_label(l)?;
            if index.insert(l.clone(), i as Point).is_some() {
                return Err(DesignError::DuplicateLabel(l.clone()));
            }
        }
        let v = labels.len();
        let mut blocks: Vec<Block> = blocks.into_iter().collect();
        for b in &blocks {
            if b.points().iter().any(|&p| p as usize >= v) {
                return Err(DesignError::PointOutOfRange);
            }
        }
        blocks.sort_unstable();
        blocks.dedup();
        let mut pair_block = vec![NO_BLOCK; v * v];
        for (bi, b) in blocks.iter().enumerate() {
            for (x, y) in b.pairs() {
                let (x, y) = (x as usize, y as usize);
                if pair_block[x * v + y] == NO_BLOCK {
                    pair_block[x * v + y] = bi as u32;
                    pair_block[y * v + x] = bi as u32;
                }
            }
        }
        Ok(TripleSystem { labels, index, blocks, pair_block })
    }

    /// Builds a system from blocks given by label; the point order is the
    /// order of `labels`.
    pub fn from_labeled<S: AsRef<str>>(labels: &[S], triples: &[[S; 3]]) -> Result<Self, DesignError> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let lookup: HashMap<&str, Point> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i as Point)).collect();
        let mut blocks = Vec::with_capacity(triples.len());
        for t in triples {
            let mut pts = [0; 3];
            for (slot, s) in pts.iter_mut().zip(t) {
                *slot = *lookup
                    .get(s.as_ref())
                    .ok_or_else(|| DesignError::UnknownLabel(s.as_ref().to_string()))?;
            }
            let b = Block::new(pts[0], pts[1], pts[2]).ok_or_else(|| {
                DesignError::DegenerateBlock(t.iter().map(|s| s.as_ref()).collect::<Vec<_>>().join(" "))
            })?;
            blocks.push(b);
        }
        Self::new(labels, blocks)
    }

    /// Points labelled `1..=v` by their integer value, blocks given as integer triples.
    pub fn from_numbered(v: usize, triples: &[[u32; 3]]) -> Result<Self, DesignError> {
        let labels: Vec<String> = (1..=v).map(|i| i.to_string()).collect();
        let mut blocks = Vec::with_capacity(triples.len());
        for t in triples {
            if t.iter().any(|&x| x == 0 || x as usize > v) {
                return Err(DesignError::PointOutOfRange);
            }
            let b = Block::new(t[0] - 1, t[1] - 1, t[2] - 1)
                .ok_or_else(|| DesignError::DegenerateBlock(format!("{} {} {}", t[0], t[1], t[2])))?;
            blocks.push(b);
        }
        Self::new(labels, blocks)
    }

    pub fn v(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: Point) -> &str {
        &self.labels[p as usize]
    }

    pub fn point(&self, label: &str) -> Option<Point> {
        self.index.get(label).copied()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.labels.len() as Point).into_iter()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn has_block(&self, b: &Block) -> bool {
        self.blocks.binary_search(b).is_ok()
    }

    /// The block through `x` and `y`, if the pair is covered.
    pub fn block_through(&self, x: Point, y: Point) -> Option<Block> {
        if x == y {
            return None;
        }
        let v = self.v();
        match self.pair_block[x as usize * v + y as usize] {
            NO_BLOCK => None,
            bi => Some(self.blocks[bi as usize]),
        }
    }

    /// The third point on the block through `x` and `y`.
    pub fn third(&self, x: Point, y: Point) -> Option<Point> {
        self.block_through(x, y).and_then(|b| b.third(x, y))
    }

    pub fn block_label(&self, b: &Block) -> String {
        let [x, y, z] = b.points();
        format!("{{{},{},{}}}", self.label(x), self.label(y), self.label(z))
    }

    /// Same point set, different blocks.
    pub fn with_blocks(&self, blocks: impl IntoIterator<Item = Block>) -> Result<Self, DesignError> {
        Self::new(self.labels.clone(), blocks)
    }

    pub fn validate(&self) -> ValidationReport {
        let v = self.v();
        let mut violations = Vec::new();
        if v < 3 {
            violations.push(Violation::TooFewPoints(v));
            return ValidationReport { violations };
        }
        if v % 6 != 1 && v % 6 != 3 {
            violations.push(Violation::InadmissibleOrder(v));
        }
        let expected = v * (v - 1) / 6;
        if self.blocks.len() != expected {
            violations.push(Violation::BlockCount { expected, found: self.blocks.len() });
        }
        let mut cover = vec![0u32; v * v];
        for b in &self.blocks {
            for (x, y) in b.pairs() {
                cover[x as usize * v + y as usize] += 1;
            }
        }
        for x in 0..v {
            for y in x + 1..v {
                match cover[x * v + y] {
                    1 => {}
                    0 => violations.push(Violation::Uncovered(x as Point, y as Point)),
                    n => violations.push(Violation::MultiplyCovered { pair: (x as Point, y as Point), count: n }),
                }
            }
        }
        ValidationReport { violations }
    }

    /// Shorthand for `validate().ok()`.
    pub fn is_sts(&self) -> bool {
        self.validate().ok()
    }

    pub(crate) fn require_sts(&self) -> Result<(), DesignError> {
        let report = self.validate();
        if report.ok() {
            Ok(())
        } else {
            Err(DesignError::NotSteiner(report.describe(self)))
        }
    }

    /// Count of blocks covering each pair, in the order `(0,1), (0,2), ...`.
    pub fn pair_coverage(&self) -> Vec<u32> {
        let v = self.v();
        let mut cover = vec![0u32; v * (v.saturating_sub(1)) / 2];
        let idx = |x: usize, y: usize| x * (2 * v - x - 1) / 2 + (y - x - 1);
        for b in &self.blocks {
            for (x, y) in b.pairs() {
                cover[idx(x as usize, y as usize)] += 1;
            }
        }
        cover
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewPoints(usize),
    InadmissibleOrder(usize),
    BlockCount { expected: usize, found: usize },
    Uncovered(Point, Point),
    MultiplyCovered { pair: (Point, Point), count: u32 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn uncovered_pairs(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.violations.iter().filter_map(|v| match v {
            Violation::Uncovered(x, y) => Some((*x, *y)),
            _ => None,
        })
    }

    pub fn describe(&self, ts: &TripleSystem) -> String {
        let mut parts: Vec<String> = self
            .violations
            .iter()
            .take(8)
            .map(|v| match v {
                Violation::TooFewPoints(n) => format!("only {n} points"),
                Violation::InadmissibleOrder(n) => format!("order {n} is not 1 or 3 mod 6"),
                Violation::BlockCount { expected, found } => format!("{found} blocks, expected {expected}"),
                Violation::Uncovered(x, y) => format!("pair {{{},{}}} uncovered", ts.label(*x), ts.label(*y)),
                Violation::MultiplyCovered { pair: (x, y), count } => {
                    format!("pair {{{},{}}} covered {count} times", ts.label(*x), ts.label(*y))
                }
            })
            .collect();
        if self.violations.len() > 8 {
            parts.push(format!("and {} more", self.violations.len() - 8));
        }
        parts.join("; ")
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}
