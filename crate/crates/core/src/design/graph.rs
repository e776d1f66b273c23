use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::system::check_label;
use super::DesignError;

/// A simple undirected graph on labelled vertices.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    // sorted, each (lo, hi) with lo < hi
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for LabeledGraph {}

impl LabeledGraph {
    /// Edges are vertex indices; duplicates (in either orientation) are merged.
    pub fn new(vertices: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, DesignError> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, l) in vertices.iter().enumerate() {
            check_label(l)?;
            if index.insert(l.clone(), i).is_some() {
                return Err(DesignError::DuplicateLabel(l.clone()));
            }
        }
        let n = vertices.len();
        let mut list = Vec::new();
        for (x, y) in edges {
            if x >= n || y >= n {
                return Err(DesignError::PointOutOfRange);
            }
            if x == y {
                return Err(DesignError::Loop(vertices[x].clone()));
            }
            list.push((x.min(y), x.max(y)));
        }
        list.sort_unstable();
        list.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(x, y) in &list {
            adj[x].push(y);
            adj[y].push(x);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(LabeledGraph { vertices, index, edges: list, adj })
    }

    pub fn from_labeled_edges<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self, DesignError> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let lookup: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let find = |s: &S| {
            lookup
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| DesignError::UnknownLabel(s.as_ref().to_string()))
        };
        let idx: Vec<(usize, usize)> =
            edges.iter().map(|(x, y)| Ok((find(x)?, find(y)?))).collect::<Result<_, DesignError>>()?;
        Self::new(vertices, idx)
    }

    /// Vertices `0..n` labelled by their index.
    pub fn numbered(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, DesignError> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adj[x].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x != y && self.adj[x].binary_search(&y).is_ok()
    }

    pub fn has_edge_labels(&self, x: &str, y: &str) -> bool {
        match (self.vertex(x), self.vertex(y)) {
            (Some(i), Some(j)) => self.has_edge(i, j),
            _ => false,
        }
    }

    pub fn complement(&self) -> LabeledGraph {
        let n = self.n();
        let mut edges = Vec::new();
        for x in 0..n {
            for y in x + 1..n {
                if !self.has_edge(x, y) {
                    edges.push((x, y));
                }
            }
        }
        LabeledGraph::new(self.vertices.clone(), edges).expect("complement of a valid graph is valid")
    }

    /// Same graph with vertices renamed; `labels[i]` replaces vertex `i`.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<LabeledGraph, DesignError> {
        if labels.len() != self.n() {
            return Err(DesignError::VertexSetMismatch(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        LabeledGraph::new(labels, self.edges.iter().copied())
    }

    /// Edge sets compared by label, ignoring vertex order.
    pub fn same_labeled_graph(&self, other: &LabeledGraph) -> bool {
        if self.n() != other.n() || self.edge_count() != other.edge_count() {
            return false;
        }
        let mut map = Vec::with_capacity(self.n());
        for l in &self.vertices {
            match other.vertex(l) {
                Some(j) => map.push(j),
                None => return false,
            }
        }
        self.edges.iter().all(|&(x, y)| other.has_edge(map[x], map[y]))
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.n();
        let mut side = vec![u8::MAX; n];
        let mut stack = Vec::new();
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if side[y] == u8::MAX {
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
}

/// The graph families that have closed-form constructions and tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphFamily {
    Complete,
    Star,
    Empty,
    Path,
    Cycle,
}

impl GraphFamily {
    pub const ALL: [GraphFamily; 5] =
        [GraphFamily::Complete, GraphFamily::Star, GraphFamily::Empty, GraphFamily::Path, GraphFamily::Cycle];

    pub fn name(self) -> &'static str {
        match self {
            GraphFamily::Complete => "complete",
            GraphFamily::Star => "star",
            GraphFamily::Empty => "empty",
            GraphFamily::Path => "path",
            GraphFamily::Cycle => "cycle",
        }
    }

    pub fn min_order(self) -> usize {
        match self {
            GraphFamily::Cycle => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphFamily {
    type Err = DesignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GraphFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| DesignError::UnknownFamily(s.to_string()))
    }
}

/// The standard member of `family` on vertices labelled `0..a`. The star's
/// center is vertex `0`; the path runs `0-1-...-(a-1)`; the cycle closes it.
pub fn graph_family(family: GraphFamily, a: usize) -> Result<LabeledGraph, DesignError> {
    if a < family.min_order() {
        return Err(DesignError::FamilyTooSmall { family: family.name(), a });
    }
    let edges: Vec<(usize, usize)> = match family {
        GraphFamily::Complete => (0..a).flat_map(|x| (x + 1..a).map(move |y| (x, y))).collect(),
        GraphFamily::Star => (1..a).map(|y| (0, y)).collect(),
        GraphFamily::Empty => Vec::new(),
        GraphFamily::Path => (1..a).map(|y| (y - 1, y)).collect(),
        GraphFamily::Cycle => (0..a).map(|x| (x, (x + 1) % a)).collect(),
    };
    LabeledGraph::numbered(a, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_edge_counts() {
        assert_eq!(graph_family(GraphFamily::Path, 5).unwrap().edge_count(), 4);
        assert_eq!(graph_family(GraphFamily::Empty, 9).unwrap().edge_count(), 0);
        assert_eq!(graph_family(GraphFamily::Cycle, 4).unwrap().edge_count(), 4);
        assert_eq!(graph_family(GraphFamily::Complete, 6).unwrap().edge_count(), 15);
        assert_eq!(graph_family(GraphFamily::Star, 6).unwrap().degree(0), 5);
        assert!(graph_family(GraphFamily::Cycle, 2).is_err());
    }

    #[test]
    fn loops_rejected_and_duplicates_merged() {
        assert!(LabeledGraph::numbered(3, [(1, 1)]).is_err());
        let g = LabeledGraph::numbered(3, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn complement_round_trip() {
        let g = graph_family(GraphFamily::Path, 6).unwrap();
        assert_eq!(g.complement().complement(), g);
        assert_eq!(g.complement().edge_count(), 15 - 5);
    }
}
