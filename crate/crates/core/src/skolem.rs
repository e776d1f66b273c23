//! Skolem-type pair sequences.
//!
//! A sequence of order `t` and defect `d` is a set of pairs `(a_r, b_r)` with
//! `b_r - a_r = r` for `r` in `d..d+t`, whose endpoints tile a ground set that
//! depends on the kind.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SkolemError {
    #[error("no {kind} sequence of order {t} and defect {d} exists")]
    NotExists { kind: SequenceKind, t: u32, d: u32 },
    #[error("unknown sequence kind `{0}`")]
    UnknownKind(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    Skolem,
    Hooked,
    Split,
    Langford,
    HookedLangford,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 5] = [
        SequenceKind::Skolem,
        SequenceKind::Hooked,
        SequenceKind::Split,
        SequenceKind::Langford,
        SequenceKind::HookedLangford,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SequenceKind::Skolem => "skolem",
            SequenceKind::Hooked => "hooked",
            SequenceKind::Split => "split",
            SequenceKind::Langford => "langford",
            SequenceKind::HookedLangford => "hooked_langford",
        }
    }

    /// Only the Langford kinds take a defect other than 1.
    pub fn has_defect(self) -> bool {
        matches!(self, SequenceKind::Langford | SequenceKind::HookedLangford)
    }

    /// The points the endpoints must tile.
    pub fn ground_set(self, t: u32) -> Vec<u32> {
        match self {
            SequenceKind::Skolem | SequenceKind::Langford => (1..=2 * t).collect(),
            SequenceKind::Hooked | SequenceKind::HookedLangford => (1..2 * t).chain([2 * t + 1]).collect(),
            SequenceKind::Split => (1..=t).chain(t + 2..=2 * t + 1).collect(),
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SequenceKind {
    type Err = SkolemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SequenceKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| SkolemError::UnknownKind(s.to_string()))
    }
}

/// Pairs indexed by difference: `pairs[i]` is the pair with difference `d + i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairSequence {
    pub kind: SequenceKind,
    pub t: u32,
    pub d: u32,
    pub pairs: Vec<(u32, u32)>,
}

impl PairSequence {
    /// Builds a sequence from pairs listed in any order; each pair is placed
    /// by its difference. Validity is not checked.
    pub fn from_pairs(kind: SequenceKind, d: u32, pairs: &[(u32, u32)]) -> Self {
        let t = pairs.len() as u32;
        let mut sorted = pairs.to_vec();
        sorted.sort_by_key(|&(a, b)| b.abs_diff(a));
        PairSequence { kind, t, d, pairs: sorted }
    }

    /// The pair with difference `r`.
    pub fn pair(&self, r: u32) -> Option<(u32, u32)> {
        r.checked_sub(self.d).and_then(|i| self.pairs.get(i as usize)).copied()
    }

    /// Same pairs with `s` added to every endpoint.
    pub fn shifted(&self, s: u32) -> Vec<(u32, u32)> {
        self.pairs.iter().map(|&(a, b)| (a + s, b + s)).collect()
    }

    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.pairs.len() != self.t as usize {
            out.push(format!("{} pairs for order {}", self.pairs.len(), self.t));
        }
        if !self.kind.has_defect() && self.d != 1 {
            out.push(format!("{} sequences have defect 1, not {}", self.kind, self.d));
        }
        for (i, &(a, b)) in self.pairs.iter().enumerate() {
            let r = self.d + i as u32;
            if b < a || b - a != r {
                out.push(format!("pair ({a},{b}) should have difference {r}"));
            }
        }
        let mut ends: Vec<u32> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        ends.sort_unstable();
        if ends != self.kind.ground_set(self.t) {
            out.push(format!("endpoints do not tile the {} ground set of order {}", self.kind, self.t));
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// `kind t d` then one `r a_r b_r` line per pair.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.kind, self.t, self.d);
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            let _ = writeln!(out, "{} {a} {b}", self.d + i as u32);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, SkolemError> {
        let err = |line, msg: String| SkolemError::Parse { line, msg };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, head) = lines.next().ok_or_else(|| err(0, "empty input".into()))?;
        let h: Vec<&str> = head.split_whitespace().collect();
        let [k, t, d] = h[..] else {
            return Err(err(ln, format!("expected `kind t d`, found `{head}`")));
        };
        let kind: SequenceKind = k.parse()?;
        let num = |s: &str, ln| s.parse::<u32>().map_err(|_| err(ln, format!("bad integer `{s}`")));
        let (t, d) = (num(t, ln)?, num(d, ln)?);
        let mut pairs = vec![(0, 0); t as usize];
        let mut filled = vec![false; t as usize];
        for (ln, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            let [r, a, b] = f[..] else {
                return Err(err(ln, format!("expected `r a_r b_r`, found `{line}`")));
            };
            let (r, a, b) = (num(r, ln)?, num(a, ln)?, num(b, ln)?);
            let i = r.checked_sub(d).filter(|&i| i < t).ok_or_else(|| err(ln, format!("difference {r} out of range")))?;
            if filled[i as usize] {
                return Err(err(ln, format!("difference {r} listed twice")));
            }
            filled[i as usize] = true;
            pairs[i as usize] = (a, b);
        }
        if let Some(i) = filled.iter().position(|f| !f) {
            return Err(err(0, format!("difference {} missing", d + i as u32)));
        }
        Ok(PairSequence { kind, t, d, pairs })
    }
}

/// Existence of a sequence of the given kind, order and defect.
pub fn exists(kind: SequenceKind, t: u32, d: u32) -> bool {
    if t == 0 || d == 0 {
        return false;
    }
    if !kind.has_defect() && d != 1 {
        return false;
    }
    let m = t % 4;
    match kind {
        SequenceKind::Skolem => m == 0 || m == 1,
        SequenceKind::Hooked => m == 2 || m == 3,
        SequenceKind::Split => m == 0 || m == 3,
        SequenceKind::Langford => {
            t + 1 >= 2 * d && if d % 2 == 1 { m == 0 || m == 1 } else { m == 0 || m == 3 }
        }
        SequenceKind::HookedLangford => {
            let (ti, di) = (t as i64, d as i64);
            ti * (ti - 2 * di + 1) >= -2 && if d % 2 == 1 { m == 2 || m == 3 } else { m == 1 || m == 2 }
        }
    }
}

/// A sequence found by complete backtracking, deterministic in `seed`.
pub fn generate(kind: SequenceKind, t: u32, d: u32, seed: u64) -> Result<PairSequence, SkolemError> {
    if !exists(kind, t, d) {
        return Err(SkolemError::NotExists { kind, t, d });
    }
    Ok(search(kind, t, d, seed).expect("existence condition guarantees a sequence"))
}

/// Exhaustive search without consulting the existence conditions.
pub fn search(kind: SequenceKind, t: u32, d: u32, seed: u64) -> Option<PairSequence> {
    if t == 0 || (!kind.has_defect() && d != 1) {
        return None;
    }
    let ground = kind.ground_set(t);
    // a_r + b_r = 2a_r + r, so the ground set sum and the difference sum agree mod 2
    let ground_sum: u64 = ground.iter().map(|&x| x as u64).sum();
    let diff_sum: u64 = (d..d + t).map(|r| r as u64).sum();
    if (ground_sum + diff_sum) % 2 == 1 {
        return None;
    }
    let top = *ground.last().unwrap() as usize;
    let mut free = vec![false; top + 1];
    for &x in &ground {
        free[x as usize] = true;
    }
    let mut st = Search {
        d,
        t,
        free,
        open_points: ground.len(),
        placed: vec![None; t as usize],
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    if st.run() {
        let pairs = st.placed.into_iter().map(|p| p.unwrap()).collect();
        Some(PairSequence { kind, t, d, pairs })
    } else {
        None
    }
}

struct Search {
    d: u32,
    t: u32,
    free: Vec<bool>,
    open_points: usize,
    placed: Vec<Option<(u32, u32)>>,
    rng: ChaCha8Rng,
}

impl Search {
    fn is_free(&self, x: i64) -> bool {
        x >= 0 && (x as usize) < self.free.len() && self.free[x as usize]
    }

    fn options_for_difference(&self, r: u32) -> Vec<(u32, u32)> {
        let top = self.free.len() as u32;
        (1..top.saturating_sub(r))
            .filter(|&a| self.free[a as usize] && self.is_free((a + r) as i64))
            .map(|a| (a, a + r))
            .collect()
    }

    fn options_for_point(&self, x: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (i, p) in self.placed.iter().enumerate() {
            if p.is_some() {
                continue;
            }
            let r = self.d + i as u32;
            if self.is_free(x as i64 + r as i64) {
                out.push((x, x + r));
            }
            if self.is_free(x as i64 - r as i64) {
                out.push((x - r, x));
            }
        }
        out
    }

    fn run(&mut self) -> bool {
        if self.placed.iter().all(Option::is_some) {
            return self.open_points == 0;
        }
        // most constrained item: an unplaced difference or an uncovered point
        let mut best: Option<Vec<(u32, u32)>> = None;
        for i in (0..self.t as usize).rev() {
            if self.placed[i].is_none() {
                let opts = self.options_for_difference(self.d + i as u32);
                if best.as_ref().is_none_or(|b| opts.len() < b.len()) {
                    best = Some(opts);
                }
            }
        }
        for x in 1..self.free.len() as u32 {
            if self.free[x as usize] {
                let opts = self.options_for_point(x);
                if best.as_ref().is_none_or(|b| opts.len() < b.len()) {
                    best = Some(opts);
                }
                if best.as_ref().is_some_and(|b| b.len() <= 1) {
                    break;
                }
            }
        }
        let mut opts = best.unwrap_or_default();
        opts.shuffle(&mut self.rng);
        for (a, b) in opts {
            let i = (b - a - self.d) as usize;
            self.free[a as usize] = false;
            self.free[b as usize] = false;
            self.open_points -= 2;
            self.placed[i] = Some((a, b));
            if self.run() {
                return true;
            }
            self.placed[i] = None;
            self.open_points += 2;
            self.free[a as usize] = true;
            self.free[b as usize] = true;
        }
        false
    }
}

/// A Skolem sequence of order `t` whose difference-1 pair is `(1, 2)`: that
/// pair joined to a Langford sequence of order `t-1`, defect 2, shifted up by 2.
pub fn special_skolem(t: u32) -> Result<PairSequence, SkolemError> {
    let not = || SkolemError::NotExists { kind: SequenceKind::Skolem, t, d: 1 };
    if !exists(SequenceKind::Skolem, t, 1) {
        return Err(not());
    }
    let mut pairs = vec![(1, 2)];
    if t > 1 {
        let lang = generate(SequenceKind::Langford, t - 1, 2, 0).map_err(|_| not())?;
        pairs.extend(lang.shifted(2));
    }
    Ok(PairSequence { kind: SequenceKind::Skolem, t, d: 1, pairs })
}

const HOOKED_6: [(u32, u32); 6] = [(9, 10), (1, 3), (4, 7), (2, 6), (8, 13), (5, 11)];
const HOOKED_7: [(u32, u32); 7] = [(5, 6), (1, 3), (10, 13), (8, 12), (2, 7), (9, 15), (4, 11)];
const HOOKED_10: [(u32, u32); 10] =
    [(4, 5), (1, 3), (9, 12), (11, 15), (2, 7), (13, 19), (14, 21), (10, 18), (8, 17), (6, 16)];
const HOOKED_11: [(u32, u32); 11] =
    [(4, 5), (1, 3), (6, 9), (17, 21), (14, 19), (10, 16), (8, 15), (12, 20), (2, 11), (13, 23), (7, 18)];

/// A hooked Skolem sequence of order `t >= 6` whose difference-2 pair is
/// `(1, 3)`. Orders 6, 7, 10 and 11 are fixed; larger orders join
/// `{(6,7),(1,3),(2,5),(4,8)}` to a hooked Langford sequence of order `t-4`,
/// defect 5, shifted up by 8.
pub fn special_hooked(t: u32) -> Result<PairSequence, SkolemError> {
    let not = || SkolemError::NotExists { kind: SequenceKind::Hooked, t, d: 1 };
    if t < 6 || !exists(SequenceKind::Hooked, t, 1) {
        return Err(not());
    }
    let fixed: Option<&[(u32, u32)]> = match t {
        6 => Some(&HOOKED_6),
        7 => Some(&HOOKED_7),
        10 => Some(&HOOKED_10),
        11 => Some(&HOOKED_11),
        _ => None,
    };
    let pairs = match fixed {
        Some(p) => p.to_vec(),
        None => {
            let lang = generate(SequenceKind::HookedLangford, t - 4, 5, 0).map_err(|_| not())?;
            let mut p = vec![(6, 7), (1, 3), (2, 5), (4, 8)];
            p.extend(lang.shifted(8));
            p
        }
    };
    Ok(PairSequence { kind: SequenceKind::Hooked, t, d: 1, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_examples_validate() {
        let sk = PairSequence::from_pairs(SequenceKind::Skolem, 1, &[(1, 2), (5, 7), (3, 6), (4, 8)]);
        assert!(sk.is_valid(), "{:?}", sk.validate());
        let hk = PairSequence::from_pairs(SequenceKind::Hooked, 1, &HOOKED_6);
        assert!(hk.is_valid());
        let sp = PairSequence::from_pairs(SequenceKind::Split, 1, &[(1, 2), (7, 9), (3, 6), (4, 8)]);
        assert!(sp.is_valid());
        let hl = PairSequence::from_pairs(SequenceKind::HookedLangford, 2, &[(4, 6), (8, 11), (1, 5), (2, 7), (3, 9)]);
        assert!(hl.is_valid(), "{:?}", hl.validate());
    }

    #[test]
    fn wrong_difference_is_reported() {
        let sk = PairSequence { kind: SequenceKind::Skolem, t: 4, d: 1, pairs: vec![(1, 2), (5, 8), (3, 6), (4, 8)] };
        assert!(!sk.is_valid());
    }

    #[test]
    fn existence_examples() {
        assert!(exists(SequenceKind::Skolem, 5, 1));
        assert!(!exists(SequenceKind::Skolem, 6, 1));
        assert!(exists(SequenceKind::Split, 7, 1));
        assert!(!exists(SequenceKind::Langford, 5, 2));
        assert!(matches!(generate(SequenceKind::Skolem, 2, 1, 0), Err(SkolemError::NotExists { .. })));
    }

    #[test]
    fn existence_matches_search_small() {
        for kind in SequenceKind::ALL {
            let defects: Vec<u32> = if kind.has_defect() { (1..=5).collect() } else { vec![1] };
            for d in defects {
                for t in 1..=12 {
                    assert_eq!(search(kind, t, d, 7).is_some(), exists(kind, t, d), "{kind} t={t} d={d}");
                }
            }
        }
    }

    #[test]
    fn special_forms() {
        assert_eq!(special_skolem(1).unwrap().pairs, vec![(1, 2)]);
        for t in 1..=30 {
            if let Ok(s) = special_skolem(t) {
                assert!(s.is_valid());
                assert_eq!(s.pair(1), Some((1, 2)));
            }
            if let Ok(s) = special_hooked(t) {
                assert!(s.is_valid(), "hooked {t}: {:?}", s.validate());
                assert_eq!(s.pair(2), Some((1, 3)));
            }
        }
        assert_eq!(special_hooked(7).unwrap().pairs, HOOKED_7.to_vec());
        assert!(special_hooked(3).is_err());
        assert!(special_skolem(2).is_err());
    }

    #[test]
    fn text_round_trip() {
        let s = generate(SequenceKind::HookedLangford, 5, 2, 3).unwrap();
        let text = s.to_text();
        assert_eq!(PairSequence::parse(&text).unwrap(), s);
        assert!(text.starts_with("hooked_langford 5 2\n2 "));
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate(SequenceKind::Skolem, 12, 1, 42).unwrap();
        let b = generate(SequenceKind::Skolem, 12, 1, 42).unwrap();
        assert_eq!(a, b);
    }
}
