use std::fmt;

use super::graph::LabeledGraph;
use super::system::{Block, Point, TripleSystem};
use super::DesignError;

/// Which of the three groups a point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Played,
    Available,
    Unplayable,
}

impl Role {
    pub fn letter(self) -> char {
        match self {
            Role::Played => 'P',
            Role::Available => 'A',
            Role::Unplayable => 'U',
        }
    }
}

/// A split of a system's points into played (P), available (A) and
/// unplayable (U) points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointPartition {
    roles: Vec<Role>,
    played: Vec<Point>,
    available: Vec<Point>,
    unplayable: Vec<Point>,
}

impl PointPartition {
    /// The three sets must be disjoint and cover `0..v`.
    pub fn new(v: usize, played: &[Point], available: &[Point], unplayable: &[Point]) -> Result<Self, DesignError> {
        let mut roles: Vec<Option<Role>> = vec![None; v];
        for (set, role) in [(played, Role::Played), (available, Role::Available), (unplayable, Role::Unplayable)] {
            for &x in set {
                let slot = roles.get_mut(x as usize).ok_or(DesignError::PointOutOfRange)?;
                if slot.is_some() {
                    return Err(DesignError::NotAPartition(format!("point {x} appears twice")));
                }
                *slot = Some(role);
            }
        }
        let roles: Vec<Role> = roles
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| DesignError::NotAPartition(format!("point {i} unassigned"))))
            .collect::<Result<_, _>>()?;
        Ok(Self::from_roles(roles))
    }

    pub fn from_roles(roles: Vec<Role>) -> Self {
        let pick = |r: Role| -> Vec<Point> {
            roles.iter().enumerate().filter(|(_, &x)| x == r).map(|(i, _)| i as Point).collect()
        };
        let played = pick(Role::Played);
        let available = pick(Role::Available);
        let unplayable = pick(Role::Unplayable);
        PointPartition { roles, played, available, unplayable }
    }

    /// Partition given by point labels of `ts`.
    pub fn from_labels<S: AsRef<str>>(ts: &TripleSystem, p: &[S], a: &[S], u: &[S]) -> Result<Self, DesignError> {
        let look = |set: &[S]| -> Result<Vec<Point>, DesignError> {
            set.iter()
                .map(|s| ts.point(s.as_ref()).ok_or_else(|| DesignError::UnknownLabel(s.as_ref().to_string())))
                .collect()
        };
        Self::new(ts.v(), &look(p)?, &look(a)?, &look(u)?)
    }

    pub fn role(&self, x: Point) -> Role {
        self.roles[x as usize]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn played(&self) -> &[Point] {
        &self.played
    }

    pub fn available(&self) -> &[Point] {
        &self.available
    }

    pub fn unplayable(&self) -> &[Point] {
        &self.unplayable
    }

    pub fn p(&self) -> usize {
        self.played.len()
    }

    pub fn a(&self) -> usize {
        self.available.len()
    }

    pub fn u(&self) -> usize {
        self.unplayable.len()
    }

    pub fn v(&self) -> usize {
        self.roles.len()
    }

    /// Copy with one point moved to another group.
    pub fn with_role(&self, x: Point, role: Role) -> Self {
        let mut roles = self.roles.clone();
        roles[x as usize] = role;
        Self::from_roles(roles)
    }
}

/// The role pattern of a block, with the three illegal patterns merged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockClass {
    Ppu,
    Paa,
    Pau,
    Puu,
    Aau,
    Auu,
    Uuu,
    /// PPP, PPA or AAA.
    Forbidden,
}

impl BlockClass {
    pub const LEGAL: [BlockClass; 7] = [
        BlockClass::Ppu,
        BlockClass::Paa,
        BlockClass::Pau,
        BlockClass::Puu,
        BlockClass::Aau,
        BlockClass::Auu,
        BlockClass::Uuu,
    ];

    pub fn of(roles: [Role; 3]) -> BlockClass {
        let count = |r: Role| roles.iter().filter(|&&x| x == r).count();
        match (count(Role::Played), count(Role::Available), count(Role::Unplayable)) {
            (2, 0, 1) => BlockClass::Ppu,
            (1, 2, 0) => BlockClass::Paa,
            (1, 1, 1) => BlockClass::Pau,
            (1, 0, 2) => BlockClass::Puu,
            (0, 2, 1) => BlockClass::Aau,
            (0, 1, 2) => BlockClass::Auu,
            (0, 0, 3) => BlockClass::Uuu,
            _ => BlockClass::Forbidden,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BlockClass::Ppu => "PPU",
            BlockClass::Paa => "PAA",
            BlockClass::Pau => "PAU",
            BlockClass::Puu => "PUU",
            BlockClass::Aau => "AAU",
            BlockClass::Auu => "AUU",
            BlockClass::Uuu => "UUU",
            BlockClass::Forbidden => "FORBIDDEN",
        }
    }
}

impl fmt::Display for BlockClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Number of blocks in each class, in the order PPU, PAA, PAU, PUU, AAU, AUU, UUU.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClassCounts {
    pub ppu: u64,
    pub paa: u64,
    pub pau: u64,
    pub puu: u64,
    pub aau: u64,
    pub auu: u64,
    pub uuu: u64,
    pub forbidden: u64,
}

impl ClassCounts {
    pub fn from_array(c: [u64; 7]) -> Self {
        ClassCounts { ppu: c[0], paa: c[1], pau: c[2], puu: c[3], aau: c[4], auu: c[5], uuu: c[6], forbidden: 0 }
    }

    pub fn as_array(&self) -> [u64; 7] {
        [self.ppu, self.paa, self.pau, self.puu, self.aau, self.auu, self.uuu]
    }

    pub fn get(&self, c: BlockClass) -> u64 {
        match c {
            BlockClass::Ppu => self.ppu,
            BlockClass::Paa => self.paa,
            BlockClass::Pau => self.pau,
            BlockClass::Puu => self.puu,
            BlockClass::Aau => self.aau,
            BlockClass::Auu => self.auu,
            BlockClass::Uuu => self.uuu,
            BlockClass::Forbidden => self.forbidden,
        }
    }

    fn bump(&mut self, c: BlockClass) {
        let slot = match c {
            BlockClass::Ppu => &mut self.ppu,
            BlockClass::Paa => &mut self.paa,
            BlockClass::Pau => &mut self.pau,
            BlockClass::Puu => &mut self.puu,
            BlockClass::Aau => &mut self.aau,
            BlockClass::Auu => &mut self.auu,
            BlockClass::Uuu => &mut self.uuu,
            BlockClass::Forbidden => &mut self.forbidden,
        };
        *slot += 1;
    }

    pub fn total(&self) -> u64 {
        self.as_array().iter().sum::<u64>() + self.forbidden
    }
}

impl fmt::Display for ClassCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.as_array();
        write!(f, "({},{},{},{},{},{},{})", c[0], c[1], c[2], c[3], c[4], c[5], c[6])
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    /// Class of each block, parallel to `ts.blocks()`.
    pub classes: Vec<BlockClass>,
    pub counts: ClassCounts,
}

pub fn block_class(part: &PointPartition, b: &Block) -> BlockClass {
    let [x, y, z] = b.points();
    BlockClass::of([part.role(x), part.role(y), part.role(z)])
}

pub fn classify_blocks(ts: &TripleSystem, part: &PointPartition) -> Result<Classification, DesignError> {
    if part.v() != ts.v() {
        return Err(DesignError::NotAPartition(format!("partition has {} points, system has {}", part.v(), ts.v())));
    }
    let mut counts = ClassCounts::default();
    let classes = ts
        .blocks()
        .iter()
        .map(|b| {
            let c = block_class(part, b);
            counts.bump(c);
            c
        })
        .collect();
    Ok(Classification { classes, counts })
}

/// A triple system, a partition of its points, and the graph claimed to be
/// embedded on the available points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCertificate {
    pub ts: TripleSystem,
    pub partition: PointPartition,
    pub graph: LabeledGraph,
}

impl EmbeddingCertificate {
    /// Checks that the graph's vertex labels are exactly the labels of A.
    pub fn new(ts: TripleSystem, partition: PointPartition, graph: LabeledGraph) -> Result<Self, DesignError> {
        let cert = EmbeddingCertificate { ts, partition, graph };
        cert.check_shape()?;
        Ok(cert)
    }

    fn check_shape(&self) -> Result<(), DesignError> {
        if self.partition.v() != self.ts.v() {
            return Err(DesignError::NotAPartition(format!(
                "partition has {} points, system has {}",
                self.partition.v(),
                self.ts.v()
            )));
        }
        if self.graph.n() != self.partition.a() {
            return Err(DesignError::VertexSetMismatch(format!(
                "graph has {} vertices but A has {} points",
                self.graph.n(),
                self.partition.a()
            )));
        }
        for &x in self.partition.available() {
            if self.graph.vertex(self.ts.label(x)).is_none() {
                return Err(DesignError::VertexSetMismatch(format!(
                    "A point {} is not a graph vertex",
                    self.ts.label(x)
                )));
            }
        }
        Ok(())
    }

    pub fn counts(&self) -> ClassCounts {
        classify_blocks(&self.ts, &self.partition).expect("shape checked on construction").counts
    }

    /// Graph vertex index of an A point.
    pub fn vertex_of(&self, x: Point) -> Option<usize> {
        self.graph.vertex(self.ts.label(x))
    }
}

/// One failed embedding constraint, with labels resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    ForbiddenBlock(String),
    UnplayableWithoutWitness(String),
    EdgeWithoutPlayedPoint(String, String),
    NonEdgeWithoutUnplayablePoint(String, String),
    NotSteiner(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::ForbiddenBlock(b) => write!(f, "forbidden block {b}"),
            Failure::UnplayableWithoutWitness(x) => write!(f, "U point {x} lies on no PPU block"),
            Failure::EdgeWithoutPlayedPoint(x, y) => write!(f, "edge {x}-{y} is not on a block with a P point"),
            Failure::NonEdgeWithoutUnplayablePoint(x, y) => {
                write!(f, "non-edge {x}-{y} is not on a block with a U point")
            }
            Failure::NotSteiner(why) => write!(f, "not a Steiner triple system: {why}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.ok() {
            return "ok".to_string();
        }
        let mut lines: Vec<String> = self.failures.iter().take(10).map(|f| f.to_string()).collect();
        if self.failures.len() > 10 {
            lines.push(format!("... {} more", self.failures.len() - 10));
        }
        lines.join("\n")
    }
}

/// Checks the embedding constraints: no PPP, PPA or AAA block; each U point on
/// a PPU block; each edge on a PAA block; each non-edge inside A on an AAU
/// block.
pub fn verify_embedding(cert: &EmbeddingCertificate) -> Result<VerificationReport, DesignError> {
    cert.check_shape()?;
    let ts = &cert.ts;
    let part = &cert.partition;
    let mut failures = Vec::new();
    let sts = ts.validate();
    if !sts.ok() {
        failures.push(Failure::NotSteiner(sts.describe(ts)));
        return Ok(VerificationReport { failures });
    }
    let mut witnessed = vec![false; ts.v()];
    for b in ts.blocks() {
        match block_class(part, b) {
            BlockClass::Forbidden => failures.push(Failure::ForbiddenBlock(ts.block_label(b))),
            BlockClass::Ppu => {
                for x in b.points() {
                    if part.role(x) == Role::Unplayable {
                        witnessed[x as usize] = true;
                    }
                }
            }
            _ => {}
        }
    }
    for &x in part.unplayable() {
        if !witnessed[x as usize] {
            failures.push(Failure::UnplayableWithoutWitness(ts.label(x).to_string()));
        }
    }
    let avail = part.available();
    for (i, &x) in avail.iter().enumerate() {
        for &y in &avail[i + 1..] {
            let lx = ts.label(x);
            let ly = ts.label(y);
            let z = ts.third(x, y).expect("validated system covers every pair");
            let is_edge = cert.graph.has_edge_labels(lx, ly);
            match (is_edge, part.role(z)) {
                (true, Role::Played) | (false, Role::Unplayable) => {}
                (true, _) => failures.push(Failure::EdgeWithoutPlayedPoint(lx.to_string(), ly.to_string())),
                (false, _) => failures.push(Failure::NonEdgeWithoutUnplayablePoint(lx.to_string(), ly.to_string())),
            }
        }
    }
    Ok(VerificationReport { failures })
}

/// What the board looks like after the points of P have been played.
#[derive(Clone, Debug)]
pub enum Induced {
    Graph(EmbeddingCertificate),
    /// Some block has all three points available; the surviving
    /// hyperedges are listed.
    NotAGraph { hyperedges: Vec<Block> },
}

/// Derives U, A and the available graph from a set of played points.
pub fn induced_certificate(ts: &TripleSystem, played: &[Point]) -> Result<Induced, DesignError> {
    ts.require_sts()?;
    let v = ts.v();
    let mut is_p = vec![false; v];
    for &x in played {
        *is_p.get_mut(x as usize).ok_or(DesignError::PointOutOfRange)? = true;
    }
    let mut is_u = vec![false; v];
    for b in ts.blocks() {
        let pts = b.points();
        let np = pts.iter().filter(|&&x| is_p[x as usize]).count();
        if np == 3 {
            return Err(DesignError::IllegalPosition(format!("block {} fully played", ts.block_label(b))));
        }
        if np == 2 {
            let z = pts.into_iter().find(|&x| !is_p[x as usize]).unwrap();
            is_u[z as usize] = true;
        }
    }
    let roles: Vec<Role> = (0..v)
        .map(|i| {
            if is_p[i] {
                Role::Played
            } else if is_u[i] {
                Role::Unplayable
            } else {
                Role::Available
            }
        })
        .collect();
    let part = PointPartition::from_roles(roles);
    let mut hyperedges = Vec::new();
    let mut edges = Vec::new();
    let pos: std::collections::HashMap<Point, usize> =
        part.available().iter().enumerate().map(|(i, &x)| (x, i)).collect();
    for b in ts.blocks() {
        let [x, y, z] = b.points();
        let roles = [part.role(x), part.role(y), part.role(z)];
        let na = roles.iter().filter(|&&r| r == Role::Available).count();
        let np = roles.iter().filter(|&&r| r == Role::Played).count();
        if na == 3 {
            hyperedges.push(*b);
        } else if na == 2 && np == 1 {
            let mut it = b.points().into_iter().filter(|&q| part.role(q) == Role::Available);
            let (p, q) = (it.next().unwrap(), it.next().unwrap());
            edges.push((pos[&p], pos[&q]));
        }
    }
    if !hyperedges.is_empty() {
        return Ok(Induced::NotAGraph { hyperedges });
    }
    let labels = part.available().iter().map(|&x| ts.label(x).to_string()).collect();
    let graph = LabeledGraph::new(labels, edges)?;
    Ok(Induced::Graph(EmbeddingCertificate { ts: ts.clone(), partition: part, graph }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::fixtures;

    #[test]
    fn turn_three_classification() {
        let ts = fixtures::sts9();
        let part = PointPartition::from_labels(&ts, &["1", "2", "6"], &["4", "5", "9"], &["3", "7", "8"]).unwrap();
        let cl = classify_blocks(&ts, &part).unwrap();
        let class_of = |a: &str, b: &str, c: &str| {
            let blk = Block::new(ts.point(a).unwrap(), ts.point(b).unwrap(), ts.point(c).unwrap()).unwrap();
            let i = ts.blocks().iter().position(|x| *x == blk).unwrap();
            cl.classes[i]
        };
        assert_eq!(class_of("4", "5", "6"), BlockClass::Paa);
        // 9 is still available at this turn
        assert_eq!(class_of("7", "8", "9"), BlockClass::Auu);
        assert_eq!(class_of("1", "2", "3"), BlockClass::Ppu);
        assert_eq!(cl.counts.total(), 12);
    }

    #[test]
    fn all_available_is_forbidden() {
        let ts = fixtures::sts9();
        let all: Vec<Point> = ts.points().collect();
        let part = PointPartition::new(9, &[], &all, &[]).unwrap();
        let cl = classify_blocks(&ts, &part).unwrap();
        assert_eq!(cl.counts.forbidden, 12);
    }

    #[test]
    fn fano_two_played_points() {
        let ts = fixtures::fano();
        let part = PointPartition::from_labels(&ts, &["1", "2"], &["3", "5", "6", "7"], &["4"]).unwrap();
        let cl = classify_blocks(&ts, &part).unwrap();
        assert_eq!(cl.counts.as_array(), [1, 4, 0, 0, 2, 0, 0]);
    }

    #[test]
    fn induced_triangle_at_turn_three() {
        let ts = fixtures::sts9();
        let p: Vec<Point> = ["1", "2", "6"].iter().map(|l| ts.point(l).unwrap()).collect();
        let Induced::Graph(cert) = induced_certificate(&ts, &p).unwrap() else {
            panic!("expected a graph");
        };
        let u: Vec<&str> = cert.partition.unplayable().iter().map(|&x| ts.label(x)).collect();
        assert_eq!(u, ["3", "7", "8"]);
        assert_eq!(cert.graph.edge_count(), 3);
        assert!(verify_embedding(&cert).unwrap().ok());
    }

    #[test]
    fn induced_not_a_graph_early() {
        let ts = fixtures::sts9();
        assert!(matches!(induced_certificate(&ts, &[]).unwrap(), Induced::NotAGraph { .. }));
        let one = [ts.point("1").unwrap()];
        let Induced::NotAGraph { hyperedges } = induced_certificate(&ts, &one).unwrap() else {
            panic!("expected hyperedges");
        };
        let b456 = Block::new(ts.point("4").unwrap(), ts.point("5").unwrap(), ts.point("6").unwrap()).unwrap();
        assert!(hyperedges.contains(&b456));
    }

    #[test]
    fn full_block_is_illegal() {
        let ts = fixtures::sts9();
        let p: Vec<Point> = ["1", "2", "3"].iter().map(|l| ts.point(l).unwrap()).collect();
        assert!(matches!(induced_certificate(&ts, &p), Err(DesignError::IllegalPosition(_))));
    }
}
