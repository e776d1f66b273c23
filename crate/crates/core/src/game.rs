//! The Nofil game on a Steiner triple system.
//!
//! Players alternately mark points; a point may not be marked when it would
//! complete a block of marked points. The last player able to move wins.
//! Positions are keyed by the set of played points, so transpositions merge.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::design::{canonical_form, canonical_form_capped, DesignError, LabeledGraph, Point, Role, TripleSystem};

/// Largest order the bitmask positions support.
pub const MAX_POINTS: usize = 128;
/// Default cap on `v` for [`outcome`].
pub const DEFAULT_SOLVE_CAP: usize = 15;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("point {point} is already played")]
    AlreadyPlayed { point: String },
    #[error("point {point} is unplayable: block {block} already has two played points")]
    Unplayable { point: String, block: String },
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("v={v} is above the solver cap of {cap}; raise the cap to solve larger systems")]
    AboveCap { v: usize, cap: usize },
    #[error("systems with more than {MAX_POINTS} points are not supported")]
    TooLarge,
    #[error(transparent)]
    Design(#[from] DesignError),
}

type Mask = u128;

fn bit(x: Point) -> Mask {
    1 << x
}

fn points_of(m: Mask) -> impl Iterator<Item = Point> {
    (0..MAX_POINTS as u32).filter(move |&x| m & bit(x) != 0)
}

/// Pair-to-third-point table for fast play.
struct Board {
    v: usize,
    third: Vec<Point>,
}

impl Board {
    fn new(ts: &TripleSystem) -> Result<Self, GameError> {
        let v = ts.v();
        if v > MAX_POINTS {
            return Err(GameError::TooLarge);
        }
        ts.require_sts()?;
        let mut third = vec![Point::MAX; v * v];
        for b in ts.blocks() {
            let [x, y, z] = b.points();
            for (s, t, w) in [(x, y, z), (x, z, y), (y, z, x)] {
                third[s as usize * v + t as usize] = w;
                third[t as usize * v + s as usize] = w;
            }
        }
        Ok(Board { v, third })
    }

    fn third(&self, x: Point, y: Point) -> Point {
        self.third[x as usize * self.v + y as usize]
    }

    fn all(&self) -> Mask {
        if self.v == MAX_POINTS {
            Mask::MAX
        } else {
            (1 << self.v) - 1
        }
    }

    /// Points made unplayable by playing `x` on top of `played`.
    fn blocked_by(&self, played: Mask, x: Point) -> Mask {
        points_of(played).fold(0, |m, y| m | bit(self.third(x, y)))
    }
}

/// A position: the played points in order, and the derived U and A.
#[derive(Clone)]
pub struct GameState<'a> {
    ts: &'a TripleSystem,
    played: Vec<Point>,
    p_mask: Mask,
    u_mask: Mask,
}

impl fmt::Debug for GameState<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GameState").field("played", &self.played).field("unplayable", &self.unplayable()).finish()
    }
}

pub fn new_game(ts: &TripleSystem) -> Result<GameState<'_>, GameError> {
    if ts.v() > MAX_POINTS {
        return Err(GameError::TooLarge);
    }
    ts.require_sts()?;
    Ok(GameState { ts, played: Vec::new(), p_mask: 0, u_mask: 0 })
}

impl<'a> GameState<'a> {
    pub fn system(&self) -> &'a TripleSystem {
        self.ts
    }

    pub fn played(&self) -> &[Point] {
        &self.played
    }

    pub fn unplayable(&self) -> Vec<Point> {
        points_of(self.u_mask).collect()
    }

    pub fn available(&self) -> Vec<Point> {
        self.ts.points().filter(|&x| self.role(x) == Role::Available).collect()
    }

    pub fn role(&self, x: Point) -> Role {
        if self.p_mask & bit(x) != 0 {
            Role::Played
        } else if self.u_mask & bit(x) != 0 {
            Role::Unplayable
        } else {
            Role::Available
        }
    }

    /// The legal moves are exactly the available points.
    pub fn legal_moves(&self) -> Vec<Point> {
        self.available()
    }

    pub fn is_over(&self) -> bool {
        self.legal_moves().is_empty()
    }

    /// Player to move: 1 or 2.
    pub fn to_move(&self) -> u8 {
        if self.played.len() % 2 == 0 {
            1
        } else {
            2
        }
    }

    pub fn play(&self, x: Point) -> Result<GameState<'a>, GameError> {
        if x as usize >= self.ts.v() {
            return Err(GameError::Design(DesignError::PointOutOfRange));
        }
        match self.role(x) {
            Role::Played => return Err(GameError::AlreadyPlayed { point: self.ts.label(x).to_string() }),
            Role::Unplayable => {
                let y = self.played.iter().copied().find(|&y| self.ts.third(x, y).is_some_and(|z| self.role(z) == Role::Played));
                let block = y.and_then(|y| self.ts.block_through(x, y)).map(|b| self.ts.block_label(&b)).unwrap_or_default();
                return Err(GameError::Unplayable { point: self.ts.label(x).to_string(), block });
            }
            Role::Available => {}
        }
        let mut next = self.clone();
        for &y in &self.played {
            if let Some(z) = self.ts.third(x, y) {
                next.u_mask |= bit(z);
            }
        }
        next.played.push(x);
        next.p_mask |= bit(x);
        Ok(next)
    }

    pub fn play_label(&self, label: &str) -> Result<GameState<'a>, GameError> {
        let x = self.ts.point(label).ok_or_else(|| GameError::UnknownPoint(label.to_string()))?;
        self.play(x)
    }

    /// Blocks without an unplayable point, with their played points
    /// removed. Each has two or three points.
    pub fn available_hyperedges(&self) -> Vec<Vec<Point>> {
        self.ts
            .blocks()
            .iter()
            .filter(|b| b.points().iter().all(|&x| self.role(x) != Role::Unplayable))
            .map(|b| b.points().into_iter().filter(|&x| self.role(x) == Role::Available).collect())
            .collect()
    }

    /// True when every available hyperedge is a pair.
    pub fn is_graph(&self) -> bool {
        self.available_hyperedges().iter().all(|e| e.len() <= 2)
    }

    /// The available graph, when the hypergraph is one; vertices are the A
    /// labels in point order.
    pub fn graph(&self) -> Option<LabeledGraph> {
        let hyper = self.available_hyperedges();
        if hyper.iter().any(|e| e.len() > 2) {
            return None;
        }
        let avail = self.available();
        let idx = |x: Point| avail.iter().position(|&y| y == x).expect("available point");
        let labels = avail.iter().map(|&x| self.ts.label(x).to_string()).collect();
        let edges: Vec<(usize, usize)> = hyper.iter().map(|e| (idx(e[0]), idx(e[1]))).collect();
        Some(LabeledGraph::new(labels, edges).expect("pairs of distinct available points"))
    }

    /// Hyperedges as label strings: labels run together when all are a
    /// single character, as in `45`, and are joined by `.` otherwise.
    pub fn hyperedge_labels(&self) -> Vec<String> {
        let short = self.ts.labels().iter().all(|l| l.chars().count() == 1);
        let sep = if short { "" } else { "." };
        self.available_hyperedges()
            .iter()
            .map(|e| e.iter().map(|&x| self.ts.label(x)).collect::<Vec<_>>().join(sep))
            .collect()
    }

    pub fn labels(&self, pts: &[Point]) -> Vec<String> {
        pts.iter().map(|&x| self.ts.label(x).to_string()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Winner {
    FirstPlayer,
    SecondPlayer,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Winner::FirstPlayer => f.write_str("first player wins"),
            Winner::SecondPlayer => f.write_str("second player wins"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub winner: Winner,
    /// A line of play: the winner always picks a winning move, the loser
    /// the first available move. Its length is the game length along it.
    pub principal_variation: Vec<Point>,
    pub positions: usize,
}

struct Solver<'b> {
    board: &'b Board,
    memo: HashMap<Mask, bool>,
}

impl Solver<'_> {
    /// Whether the player to move at `(played, unplayable)` wins.
    fn wins(&mut self, played: Mask, unplayable: Mask) -> bool {
        if let Some(&w) = self.memo.get(&played) {
            return w;
        }
        let free = self.board.all() & !played & !unplayable;
        let mut win = false;
        for x in points_of(free) {
            let u = unplayable | self.board.blocked_by(played, x);
            if !self.wins(played | bit(x), u) {
                win = true;
                break;
            }
        }
        self.memo.insert(played, win);
        win
    }

    fn best_move(&mut self, played: Mask, unplayable: Mask) -> Option<Point> {
        let free = self.board.all() & !played & !unplayable;
        let mut first = None;
        for x in points_of(free) {
            first.get_or_insert(x);
            let u = unplayable | self.board.blocked_by(played, x);
            if !self.wins(played | bit(x), u) {
                return Some(x);
            }
        }
        first
    }
}

/// Solves the game from the empty position for `v <= cap`.
pub fn outcome(ts: &TripleSystem, cap: usize) -> Result<Outcome, GameError> {
    if ts.v() > cap {
        return Err(GameError::AboveCap { v: ts.v(), cap });
    }
    let board = Board::new(ts)?;
    let mut s = Solver { board: &board, memo: HashMap::new() };
    let first_wins = s.wins(0, 0);
    let (mut played, mut unplayable) = (0, 0);
    let mut pv = Vec::new();
    while let Some(x) = s.best_move(played, unplayable) {
        pv.push(x);
        unplayable |= board.blocked_by(played, x);
        played |= bit(x);
    }
    let winner = if first_wins { Winner::FirstPlayer } else { Winner::SecondPlayer };
    Ok(Outcome { winner, principal_variation: pv, positions: s.memo.len() })
}

/// Budgets for the exhaustive traversals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HarvestLimits {
    /// Positions expanded before giving up.
    pub max_nodes: u64,
    /// Graph states with more available points than this are counted but
    /// not keyed.
    pub max_graph_vertices: usize,
}

impl Default for HarvestLimits {
    fn default() -> Self {
        HarvestLimits { max_nodes: 10_000_000, max_graph_vertices: 16 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    /// The graph at the witness position, labelled by point labels.
    pub graph: LabeledGraph,
    /// Played points reaching the graph (labels, in point order).
    pub witness: Vec<String>,
    /// Distinct played sets reaching a graph with this key.
    pub count: u64,
    /// Number of harvested systems the key was seen in.
    pub sources: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphCatalog {
    pub entries: BTreeMap<String, CatalogEntry>,
    /// Set when a budget ran out before the traversal finished.
    pub incomplete: bool,
    pub expanded: u64,
    /// Graph states skipped for having too many vertices to key.
    pub oversized: u64,
}

impl GraphCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&CatalogEntry> {
        self.entries.get(key)
    }

    /// Entry whose graph is isomorphic to `g`.
    pub fn find(&self, g: &LabeledGraph) -> Option<&CatalogEntry> {
        canonical_form_capped(g, 64).ok().and_then(|k| self.entries.get(&k))
    }

    /// Adds another catalog's counts; witnesses already present are kept.
    pub fn merge(&mut self, other: GraphCatalog) {
        self.incomplete |= other.incomplete;
        self.expanded += other.expanded;
        self.oversized += other.oversized;
        for (k, e) in other.entries {
            match self.entries.get_mut(&k) {
                Some(mine) => {
                    mine.count += e.count;
                    mine.sources += e.sources;
                }
                None => {
                    self.entries.insert(k, e);
                }
            }
        }
    }

    /// One line per entry: `canonical_key n_vertices n_edges witness_P...`.
    pub fn to_lines(&self) -> String {
        let mut s = String::new();
        for (k, e) in &self.entries {
            s.push_str(&format!("{k} {} {}", e.graph.n(), e.graph.edge_count()));
            for w in &e.witness {
                s.push(' ');
                s.push_str(w);
            }
            s.push('\n');
        }
        s
    }
}

/// Visits every reachable played set once, depth first in point order.
struct Walker<'b> {
    board: &'b Board,
    seen: HashSet<Mask>,
    expanded: u64,
    max_nodes: u64,
    out_of_budget: bool,
}

impl Walker<'_> {
    fn walk(&mut self, played: Mask, unplayable: Mask, visit: &mut dyn FnMut(Mask, Mask) -> bool) -> bool {
        if !self.seen.insert(played) {
            return false;
        }
        if self.expanded >= self.max_nodes {
            self.out_of_budget = true;
            return true;
        }
        self.expanded += 1;
        if visit(played, unplayable) {
            return true;
        }
        let free = self.board.all() & !played & !unplayable;
        for x in points_of(free) {
            let u = unplayable | self.board.blocked_by(played, x);
            if self.walk(played | bit(x), u, visit) {
                return true;
            }
        }
        false
    }
}

/// The available graph at a position, or `None` while some block has all
/// three points available.
fn graph_at(ts: &TripleSystem, board: &Board, played: Mask, unplayable: Mask) -> Option<LabeledGraph> {
    let avail = board.all() & !played & !unplayable;
    let mut edges = Vec::new();
    let a: Vec<Point> = points_of(avail).collect();
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in a.iter().enumerate().skip(i + 1) {
            let z = board.third(x, y);
            if avail & bit(z) != 0 {
                return None;
            }
            if played & bit(z) != 0 {
                edges.push((i, j));
            }
        }
    }
    let labels = a.iter().map(|&x| ts.label(x).to_string()).collect();
    Some(LabeledGraph::new(labels, edges).expect("distinct available points"))
}

fn witness_labels(ts: &TripleSystem, played: Mask) -> Vec<String> {
    points_of(played).map(|x| ts.label(x).to_string()).collect()
}

/// Records every graph reachable in play, keyed by canonical form. The
/// witness of a key is the first played set reaching it.
pub fn harvest_graphs(ts: &TripleSystem, limits: &HarvestLimits) -> Result<GraphCatalog, GameError> {
    let board = Board::new(ts)?;
    let mut cat = GraphCatalog::default();
    let mut w = Walker { board: &board, seen: HashSet::new(), expanded: 0, max_nodes: limits.max_nodes, out_of_budget: false };
    let mut err = None;
    w.walk(0, 0, &mut |played, unplayable| {
        let Some(g) = graph_at(ts, &board, played, unplayable) else { return false };
        if g.n() > limits.max_graph_vertices {
            cat.oversized += 1;
            return false;
        }
        match canonical_form_capped(&g, limits.max_graph_vertices) {
            Ok(key) => {
                cat.entries
                    .entry(key)
                    .and_modify(|e| e.count += 1)
                    .or_insert_with(|| CatalogEntry { graph: g, witness: witness_labels(ts, played), count: 1, sources: 1 });
                false
            }
            Err(e) => {
                err = Some(e);
                true
            }
        }
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    cat.incomplete = w.out_of_budget;
    cat.expanded = w.expanded;
    Ok(cat)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Containment {
    /// Played points (labels) at which the available graph is isomorphic to
    /// the target.
    Found(Vec<String>),
    /// Not reached; conclusive only when `complete`.
    NotFound { complete: bool },
}

/// Searches the game tree for a position whose available graph is
/// isomorphic to `g`, stopping at the first.
pub fn contains_graph(ts: &TripleSystem, g: &LabeledGraph, limits: &HarvestLimits) -> Result<Containment, GameError> {
    let board = Board::new(ts)?;
    let key = canonical_form_capped(g, 64)?;
    let (n, e) = (g.n(), g.edge_count());
    let mut w = Walker { board: &board, seen: HashSet::new(), expanded: 0, max_nodes: limits.max_nodes, out_of_budget: false };
    let mut found = None;
    w.walk(0, 0, &mut |played, unplayable| {
        let avail = board.all() & !played & !unplayable;
        if avail.count_ones() as usize != n {
            return false;
        }
        let Some(h) = graph_at(ts, &board, played, unplayable) else { return false };
        if h.edge_count() == e && canonical_form_capped(&h, 64).is_ok_and(|k| k == key) {
            found = Some(witness_labels(ts, played));
            return true;
        }
        false
    });
    Ok(match found {
        Some(wit) => Containment::Found(wit),
        None => Containment::NotFound { complete: !w.out_of_budget },
    })
}

/// Canonical key of a graph with the default vertex cap.
pub fn graph_key(g: &LabeledGraph) -> Result<String, GameError> {
    Ok(canonical_form(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{fixtures, graph_family, induced_certificate, GraphFamily, Induced};

    fn labels(s: &GameState, pts: &[Point]) -> Vec<String> {
        let mut v = s.labels(pts);
        v.sort();
        v
    }

    #[test]
    fn example_line_on_sts9() {
        let ts = fixtures::sts9();
        let s0 = new_game(&ts).unwrap();
        assert_eq!(s0.available_hyperedges().len(), 12);
        assert_eq!(s0.legal_moves().len(), 9);
        let s2 = s0.play_label("1").unwrap().play_label("2").unwrap();
        assert_eq!(labels(&s2, &s2.unplayable()), ["3"]);
        assert_eq!(labels(&s2, &s2.legal_moves()), ["4", "5", "6", "7", "8", "9"]);
        let err = s2.play_label("3").unwrap_err();
        assert!(err.to_string().contains("{1,2,3}"), "{err}");
        let s3 = s2.play_label("6").unwrap();
        let mut h = s3.hyperedge_labels();
        h.sort();
        assert_eq!(h, ["45", "49", "59"]);
        let s4 = s3.play_label("4").unwrap();
        assert!(s4.is_over());
    }

    #[test]
    fn sts9_second_player_wins_in_four() {
        let o = outcome(&fixtures::sts9(), DEFAULT_SOLVE_CAP).unwrap();
        assert_eq!(o.winner, Winner::SecondPlayer);
        assert_eq!(o.principal_variation.len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let ts = crate::search::hillclimb_sts(19, &Default::default()).unwrap();
        assert!(matches!(outcome(&ts, 15), Err(GameError::AboveCap { .. })));
    }

    #[test]
    fn harvest_sts9() {
        let ts = fixtures::sts9();
        let cat = harvest_graphs(&ts, &HarvestLimits::default()).unwrap();
        assert!(!cat.incomplete);
        let k3 = graph_family(GraphFamily::Complete, 3).unwrap();
        assert!(cat.find(&k3).is_some());
        for e in cat.entries.values() {
            let played: Vec<Point> = e.witness.iter().map(|l| ts.point(l).unwrap()).collect();
            let Induced::Graph(c) = induced_certificate(&ts, &played).unwrap() else { panic!() };
            assert_eq!(graph_key(&c.graph).unwrap(), graph_key(&e.graph).unwrap());
        }
    }

    #[test]
    fn containment() {
        let ts = fixtures::sts9();
        let k3 = graph_family(GraphFamily::Complete, 3).unwrap();
        assert!(matches!(contains_graph(&ts, &k3, &HarvestLimits::default()).unwrap(), Containment::Found(_)));
        let k4 = graph_family(GraphFamily::Complete, 4).unwrap();
        assert_eq!(contains_graph(&ts, &k4, &HarvestLimits::default()).unwrap(), Containment::NotFound { complete: true });
        let c4 = graph_family(GraphFamily::Cycle, 4).unwrap();
        match contains_graph(&fixtures::fano(), &c4, &HarvestLimits::default()).unwrap() {
            Containment::Found(w) => assert_eq!(w.len(), 2),
            other => panic!("{other:?}"),
        }
    }
}
