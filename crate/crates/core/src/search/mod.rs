//! Randomized search for embeddings.
//!
//! Two strategies: hill-climb whole systems and harvest the graphs that
//! appear in play ([`sample_and_harvest`]), or freeze the triples an
//! embedding needs for a chosen `(p, u)` and hill-climb the rest
//! ([`search_min_embedding`]).

mod colouring;
pub(crate) mod hillclimb;
mod seed;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{self, GraphProfile, Obstruction, ParameterSet};
use crate::design::{verify_embedding, DesignError, EmbeddingCertificate, LabeledGraph, TripleSystem};
use crate::game::{self, GameError, GraphCatalog, HarvestLimits};

pub use colouring::equitable_edge_colouring;
pub use seed::{build_seed_triples, SeedTriples};

use hillclimb::{climb_sts, into_system, numbered_labels, Climb};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("v={0} is not 1 or 3 mod 6")]
    BadOrder(u64),
    #[error("(v, p, u) = ({v}, {p}, {u}) is not an admissible row for this graph")]
    Inadmissible { v: u64, p: usize, u: usize },
    #[error("colouring: {0}")]
    Colouring(String),
    #[error("no completion within {iters} iterations")]
    Exhausted { iters: u64 },
    #[error("nothing found: {0}")]
    NotFound(String),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Which rows at a given order are tried first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Priority {
    #[default]
    LargeP,
    LargeU,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    /// Hill-climb steps for the first attempt; later attempts get more.
    pub max_iters: u64,
    /// Attempts per system or per parameter row, each with its own colour
    /// class assignment and hill-climb seed.
    pub restarts: usize,
    /// Smallest order tried by [`search_min_embedding`].
    pub v_min: u64,
    pub priority: Priority,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { seed: 0, max_iters: 200_000, restarts: 8, v_min: 0, priority: Priority::LargeP }
    }
}

impl SearchConfig {
    /// Budget for attempt `k`: doubles every four attempts, up to 16 times
    /// the base.
    pub fn budget(&self, k: usize) -> u64 {
        self.max_iters.saturating_mul(1 << (k / 4).min(4))
    }
}

/// Mixes a seed with the coordinates of an attempt (splitmix64).
pub fn derive_seed(seed: u64, parts: &[u64]) -> u64 {
    let mut z = seed;
    for &p in parts {
        z = z.wrapping_add(p.wrapping_add(0x9e37_79b9_7f4a_7c15));
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
    }
    z
}

/// A random STS(v) on labels `1..=v`.
pub fn hillclimb_sts(v: u64, cfg: &SearchConfig) -> Result<TripleSystem, SearchError> {
    if !bounds::admissible_order(v) {
        return Err(SearchError::BadOrder(v));
    }
    let v = v as usize;
    for k in 0..cfg.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[v as u64, k as u64]));
        if let Some(blocks) = climb_sts(v, &mut rng, cfg.budget(k)) {
            return Ok(into_system(numbered_labels(v), blocks));
        }
    }
    Err(SearchError::Exhausted { iters: cfg.budget(cfg.restarts.max(1) - 1) })
}

/// Completes the seed to an STS(v) with a single hill-climb run seeded by
/// `cfg.seed`; the frozen blocks are kept as they are.
pub fn hillclimb_complete(seed: &SeedTriples, v: u64, cfg: &SearchConfig) -> Result<TripleSystem, SearchError> {
    if v as usize != seed.v() {
        return Err(SearchError::NotFound(format!("seed has {} points, asked for v={v}", seed.v())));
    }
    if !bounds::admissible_order(v) {
        return Err(SearchError::BadOrder(v));
    }
    let mut c = Climb::new(seed.v());
    for b in seed.frozen() {
        if !c.freeze(b) {
            return Err(SearchError::NotFound("frozen blocks share a pair".into()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    if !c.run(&mut rng, cfg.max_iters) {
        return Err(SearchError::Exhausted { iters: cfg.max_iters });
    }
    Ok(TripleSystem::new(seed.labels(), c.blocks())?)
}

/// Attempt `k` at the row `(p, u)`: fresh class assignment, then completion.
fn attempt(g: &LabeledGraph, p: usize, u: usize, k: usize, cfg: &SearchConfig) -> Result<EmbeddingCertificate, SearchError> {
    let v = (p + g.n() + u) as u64;
    let s = derive_seed(cfg.seed, &[v, p as u64, u as u64, k as u64]);
    let mut rng = ChaCha8Rng::seed_from_u64(s);
    let seed = build_seed_triples(g, p, u, &mut rng)?;
    let run = SearchConfig { seed: derive_seed(s, &[1]), max_iters: cfg.budget(k), ..cfg.clone() };
    let ts = hillclimb_complete(&seed, v, &run)?;
    let cert = seed.certificate(ts.blocks().to_vec())?;
    let report = verify_embedding(&cert)?;
    if !report.ok() {
        return Err(SearchError::NotFound(format!("completion failed verification: {}", report.summary())));
    }
    Ok(cert)
}

/// Runs the attempts of one row in parallel. Attempts after the first
/// success are cancelled; the success with the lowest index is returned, so
/// the result does not depend on scheduling.
fn run_row(
    g: &LabeledGraph,
    p: usize,
    u: usize,
    cfg: &SearchConfig,
) -> (Option<EmbeddingCertificate>, Vec<(usize, Result<(), SearchError>, u128)>) {
    let first = AtomicUsize::new(usize::MAX);
    let mut results: Vec<_> = (0..cfg.restarts.max(1))
        .into_par_iter()
        .filter_map(|k| {
            if k > first.load(Ordering::Relaxed) {
                return None;
            }
            let t = Instant::now();
            let r = attempt(g, p, u, k, cfg);
            if r.is_ok() {
                first.fetch_min(k, Ordering::Relaxed);
            }
            Some((k, r, t.elapsed().as_millis()))
        })
        .collect();
    results.sort_by_key(|r| r.0);
    let stop = first.load(Ordering::Relaxed);
    results.retain(|r| r.0 <= stop);
    let mut cert = None;
    let log = results
        .into_iter()
        .map(|(k, r, ms)| match r {
            Ok(c) => {
                cert = Some(c);
                (k, Ok(()), ms)
            }
            Err(e) => (k, Err(e), ms),
        })
        .collect();
    (cert, log)
}

/// Embeds `g` with `|P| = p`, `|U| = u` by seeded completion.
pub fn embed_with_parameters(g: &LabeledGraph, p: usize, u: usize, cfg: &SearchConfig) -> Result<EmbeddingCertificate, SearchError> {
    let (cert, log) = run_row(g, p, u, cfg);
    cert.ok_or_else(|| match log.into_iter().filter_map(|(_, r, _)| r.err()).last() {
        Some(SearchError::Exhausted { .. }) | None => {
            SearchError::NotFound(format!("no completion at (p, u) = ({p}, {u}) in {} attempts", cfg.restarts))
        }
        Some(e) => e,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AttemptResult {
    Found,
    Exhausted,
    /// The row could not be seeded (for example a colouring does not exist).
    Unseeded(String),
    /// Skipped: the counts force the UUU blocks to form an STS(u), and none
    /// exists.
    Blocked,
}

impl fmt::Display for AttemptResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttemptResult::Found => f.write_str("found"),
            AttemptResult::Exhausted => f.write_str("exhausted"),
            AttemptResult::Unseeded(_) => f.write_str("unseeded"),
            AttemptResult::Blocked => f.write_str("blocked"),
        }
    }
}

/// One line of the attempt log: `v p u attempt result millis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttemptRecord {
    pub v: u64,
    pub p: u64,
    pub u: u64,
    pub attempt: usize,
    pub result: AttemptResult,
    pub millis: u128,
}

impl fmt::Display for AttemptRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {} {} {}", self.v, self.p, self.u, self.attempt, self.result, self.millis)
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub certificate: Option<EmbeddingCertificate>,
    pub log: Vec<AttemptRecord>,
}

impl SearchOutcome {
    pub fn v(&self) -> Option<usize> {
        self.certificate.as_ref().map(|c| c.ts.v())
    }

    /// Whether any row up to the limit was skipped as blocked.
    pub fn saw_blocked(&self) -> bool {
        self.log.iter().any(|r| r.result == AttemptResult::Blocked)
    }
}

/// Rows at `v` in the order they are tried.
pub fn ordered_rows(profile: &GraphProfile, v: u64, priority: Priority) -> Vec<ParameterSet> {
    let mut rows = bounds::rows_at(profile, v);
    if priority == Priority::LargeU {
        rows.reverse();
    }
    rows
}

/// Walks the admissible rows from the smallest order up to `v_max` and
/// returns the first embedding found. Rows whose counts make the UUU blocks
/// an impossible STS(u) are logged and skipped. Finding nothing is not
/// evidence that no embedding exists.
pub fn search_min_embedding(g: &LabeledGraph, v_max: u64, cfg: &SearchConfig) -> SearchOutcome {
    let profile = GraphProfile::of_graph(g);
    let mut log = Vec::new();
    for v in cfg.v_min.max(g.n() as u64)..=v_max {
        for row in ordered_rows(&profile, v, cfg.priority) {
            let (p, u) = (row.p, row.u);
            if row.obstruction() == Obstruction::Blocked {
                log.push(AttemptRecord { v, p, u, attempt: 0, result: AttemptResult::Blocked, millis: 0 });
                continue;
            }
            let (cert, attempts) = run_row(g, p as usize, u as usize, cfg);
            for (k, r, millis) in attempts {
                let result = match r {
                    Ok(()) => AttemptResult::Found,
                    Err(SearchError::Exhausted { .. }) => AttemptResult::Exhausted,
                    Err(e) => AttemptResult::Unseeded(e.to_string()),
                };
                log.push(AttemptRecord { v, p, u, attempt: k, result, millis });
            }
            if cert.is_some() {
                return SearchOutcome { certificate: cert, log };
            }
        }
    }
    SearchOutcome { certificate: None, log }
}

/// Hill-climbs `n_samples` systems of order `v` and merges the graphs their
/// game trees contain. Each entry's `sources` counts the samples it came
/// from.
pub fn sample_and_harvest(v: u64, n_samples: usize, limits: &HarvestLimits, cfg: &SearchConfig) -> Result<GraphCatalog, SearchError> {
    if !bounds::admissible_order(v) {
        return Err(SearchError::BadOrder(v));
    }
    let catalogs: Vec<GraphCatalog> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let run = SearchConfig { seed: derive_seed(cfg.seed, &[v, i as u64]), ..cfg.clone() };
            let ts = hillclimb_sts(v, &run)?;
            Ok(game::harvest_graphs(&ts, limits)?)
        })
        .collect::<Result<_, SearchError>>()?;
    let mut merged = GraphCatalog::default();
    for c in catalogs {
        merged.merge(c);
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{graph_family, GraphFamily};

    #[test]
    fn hillclimb_is_reproducible() {
        let cfg = SearchConfig { seed: 5, ..Default::default() };
        let a = hillclimb_sts(19, &cfg).unwrap();
        let b = hillclimb_sts(19, &cfg).unwrap();
        assert!(a.is_sts());
        assert_eq!(a, b);
        assert!(hillclimb_sts(11, &cfg).is_err());
    }

    #[test]
    fn four_cycle_in_fano() {
        let g = graph_family(GraphFamily::Cycle, 4).unwrap();
        let out = search_min_embedding(&g, 7, &SearchConfig::default());
        let cert = out.certificate.unwrap();
        assert_eq!(cert.ts.v(), 7);
        assert!(verify_embedding(&cert).unwrap().ok());
    }

    #[test]
    fn frozen_blocks_are_kept() {
        let g = graph_family(GraphFamily::Path, 5).unwrap();
        let (seed, ts) = (0..40)
            .find_map(|s| {
                let seed = build_seed_triples(&g, 4, 6, &mut ChaCha8Rng::seed_from_u64(s)).unwrap();
                let ts = hillclimb_complete(&seed, 15, &SearchConfig { seed: s, ..Default::default() }).ok()?;
                Some((seed, ts))
            })
            .unwrap();
        for b in seed.frozen() {
            assert!(ts.has_block(&crate::design::Block::new(b[0], b[1], b[2]).unwrap()));
        }
    }

    #[test]
    fn blocked_rows_are_skipped() {
        let g = graph_family(GraphFamily::Empty, 2).unwrap();
        let out = search_min_embedding(&g, 13, &SearchConfig::default());
        assert!(out.certificate.is_none());
        assert!(out.log.iter().any(|r| r.v == 13 && r.result == AttemptResult::Blocked));
        let out = search_min_embedding(&g, 15, &SearchConfig::default());
        assert_eq!(out.v(), Some(15));
    }
}
