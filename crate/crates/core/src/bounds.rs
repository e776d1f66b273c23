//! Necessary conditions for embedding a graph, and the smallest admissible
//! orders they allow.
//!
//! Every test is evaluated in exact integer arithmetic; inequalities with a
//! square root are squared after a sign check.

use std::fmt::{self, Write as _};

use rayon::prelude::*;

use crate::design::{chromatic_index, ClassCounts, GraphFamily, LabeledGraph};

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Block-class counts forced by `(p, a, u, e)` through pair counting, or
/// `None` when some count would be negative or fractional.
pub fn class_counts(p: u64, a: u64, u: u64, e: u64) -> Option<ClassCounts> {
    let (p, a, u, e) = (p as i64, a as i64, u as i64, e as i64);
    if e > binom2(a) {
        return None;
    }
    let ppu = binom2(p);
    let paa = e;
    let aau = binom2(a) - e;
    let pau = p * a - 2 * e;
    let puu2 = p * u - 2 * ppu - pau;
    let auu2 = a * u - pau - 2 * aau;
    if puu2 % 2 != 0 || auu2 % 2 != 0 {
        return None;
    }
    let (puu, auu) = (puu2 / 2, auu2 / 2);
    let uuu3 = binom2(u) - puu - auu;
    if uuu3 % 3 != 0 {
        return None;
    }
    let c = [ppu, paa, pau, puu, aau, auu, uuu3 / 3];
    if c.iter().any(|&x| x < 0) {
        return None;
    }
    Some(ClassCounts::from_array(c.map(|x| x as u64)))
}

/// One evaluated inequality. `lhs` and `rhs` are for display; `pass` is
/// decided exactly. `pass` is `None` when the inequality does not apply.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheck {
    pub id: u8,
    pub statement: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub v: u64,
    pub a: u64,
    pub u: u64,
    pub e: u64,
    /// The ten inequalities in order; entries 9 and 10 form one disjunction.
    pub checks: Vec<BoundCheck>,
    /// `p + a - 1 - 2e/p <= u <= C(p,2)`; `None` when `p = 0`.
    pub interval: Option<(f64, f64)>,
    /// `p^3 - 3p^2 - 2(a-1)p + 4e`, nonnegative whenever the interval is nonempty.
    pub cubic: i64,
}

impl BoundReport {
    /// All applicable inequalities hold, with 9 and 10 read as "either".
    pub fn passes(&self) -> bool {
        let get = |id: u8| self.checks.iter().find(|c| c.id == id).and_then(|c| c.pass);
        let singles = self.checks.iter().filter(|c| c.id <= 8).all(|c| c.pass != Some(false));
        let disjunction = match (get(9), get(10)) {
            (None, None) => true,
            (x, y) => x == Some(true) || y == Some(true),
        };
        singles && disjunction
    }

    pub fn failed(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.checks.iter().filter(|c| c.id <= 8 && c.pass == Some(false)).map(|c| c.id).collect();
        let nine = self.checks.iter().find(|c| c.id == 9).and_then(|c| c.pass);
        let ten = self.checks.iter().find(|c| c.id == 10).and_then(|c| c.pass);
        if nine == Some(false) && ten == Some(false) {
            out.extend([9, 10]);
        }
        out
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "v={} a={} u={} e={} p={}", self.v, self.a, self.u, self.e, self.v as i64 - self.a as i64 - self.u as i64)?;
        for c in &self.checks {
            let status = match c.pass {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "n/a",
            };
            writeln!(f, "  ({:>2}) {:<44} {:>10.3} vs {:>10.3}  {}", c.id, c.statement, c.lhs, c.rhs, status)?;
        }
        if let Some((lo, hi)) = self.interval {
            writeln!(f, "  interval {lo:.3} <= u <= {hi:.3}")?;
        }
        write!(f, "  cubic p^3-3p^2-2(a-1)p+4e = {}", self.cubic)
    }
}

/// Evaluates the ten necessary inequalities for a candidate `(v, a, u)` and a
/// graph with `e` edges, chromatic index `chi_g` and complement chromatic
/// index `chi_gc`.
pub fn lemma1_bounds(v: u64, a: u64, u: u64, e: u64, chi_g: u64, chi_gc: u64) -> BoundReport {
    assert!(a > 0 || e == 0, "a graph with no vertices has no edges");
    let (vi, ai, ui, ei) = (v as i64, a as i64, u as i64, e as i64);
    let (vf, af, uf, ef) = (v as f64, a as f64, u as f64, e as f64);
    let p = vi - ai - ui;
    let mut checks = Vec::with_capacity(10);
    let mut push = |id, statement, lhs: f64, rhs: f64, pass| checks.push(BoundCheck { id, statement, lhs, rhs, pass });

    push(1, "u <= v - a - chi'(G)", uf, (vi - ai - chi_g as i64) as f64, Some(ui <= vi - ai - chi_g as i64));
    push(2, "u >= chi'(complement G)", uf, chi_gc as f64, Some(ui >= chi_gc as i64));
    push(3, "u >= (v - a - 1)/2", uf, (vf - af - 1.0) / 2.0, Some(2 * ui >= vi - ai - 1));
    if a > 0 {
        push(
            4,
            "u >= (a(v-1) - 4e)/(2a)",
            uf,
            (af * (vf - 1.0) - 4.0 * ef) / (2.0 * af),
            Some(2 * ai * ui >= ai * (vi - 1) - 4 * ei),
        );
    } else {
        push(4, "u >= (a(v-1) - 4e)/(2a)", uf, 0.0, None);
    }
    // 4u - (3v - 2a - 1) compared with +-sqrt(D)
    let l = 4 * ui - 3 * vi + 2 * ai + 1;
    let d = (vi - 2 * ai + 1).pow(2) + 16 * ei;
    let sq = (d as f64).sqrt();
    push(5, "u >= (3v-2a-1 - sqrt((v-2a+1)^2+16e))/4", uf, (3.0 * vf - 2.0 * af - 1.0 - sq) / 4.0, Some(l >= 0 || l * l <= d));
    push(6, "u <= (3v-2a-1 + sqrt((v-2a+1)^2+16e))/4", uf, (3.0 * vf - 2.0 * af - 1.0 + sq) / 4.0, Some(l <= 0 || l * l <= d));
    if a > 0 {
        push(7, "u <= v - a - 2e/a", uf, vf - af - 2.0 * ef / af, Some(ai * ui <= ai * (vi - ai) - 2 * ei));
    } else {
        push(7, "u <= v - a - 2e/a", uf, vf, None);
    }
    // 2(v-a) + 1 - 2u >= sqrt(8(v-a)+1)
    let m = 2 * (vi - ai) + 1 - 2 * ui;
    let r = 8 * (vi - ai) + 1;
    push(
        8,
        "u <= v - a + (1 - sqrt(8(v-a)+1))/2",
        uf,
        vf - af + (1.0 - (r.max(0) as f64).sqrt()) / 2.0,
        Some(r >= 0 && m >= 0 && m * m >= r),
    );
    if vi * vi - 4 * vi <= 24 * ei {
        let w = 72 * ei - 3 * vi * vi + 12 * vi;
        let n = 6 * ui - 3 * vi;
        let s = (w as f64).sqrt() / 6.0;
        push(9, "u >= v/2 + sqrt(72e-3v^2+12v)/6", uf, vf / 2.0 + s, Some(n >= 0 && n * n >= w));
        push(10, "u <= v/2 - sqrt(72e-3v^2+12v)/6", uf, vf / 2.0 - s, Some(n <= 0 && n * n >= w));
    } else {
        push(9, "u >= v/2 + sqrt(72e-3v^2+12v)/6", uf, f64::NAN, None);
        push(10, "u <= v/2 - sqrt(72e-3v^2+12v)/6", uf, f64::NAN, None);
    }
    let interval = (p > 0).then(|| ((p + ai - 1) as f64 - 2.0 * ef / p as f64, binom2(p) as f64));
    let cubic = p.pow(3) - 3 * p * p - 2 * (ai - 1) * p + 4 * ei;
    BoundReport { v, a, u, e, checks, interval, cubic }
}

/// The graph data the bounds depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GraphProfile {
    pub a: u64,
    pub e: u64,
    pub chi_g: u64,
    pub chi_complement: u64,
}

fn complete_index(n: u64) -> u64 {
    match n {
        0 | 1 => 0,
        n if n % 2 == 0 => n - 1,
        n => n,
    }
}

impl GraphProfile {
    pub fn of_graph(g: &LabeledGraph) -> Self {
        GraphProfile {
            a: g.n() as u64,
            e: g.edge_count() as u64,
            chi_g: chromatic_index(g) as u64,
            chi_complement: chromatic_index(&g.complement()) as u64,
        }
    }

    /// Closed forms for the standard families and their complements.
    pub fn of_family(family: GraphFamily, a: u64) -> Self {
        let (e, chi_g, chi_complement) = match family {
            GraphFamily::Complete => (a * a.saturating_sub(1) / 2, complete_index(a), 0),
            GraphFamily::Empty => (0, 0, complete_index(a)),
            // complement: the leaves form K_{a-1}, the center is isolated
            GraphFamily::Star => (a.saturating_sub(1), a.saturating_sub(1), complete_index(a.saturating_sub(1))),
            GraphFamily::Path => {
                let chi = match a {
                    0 | 1 => 0,
                    2 => 1,
                    _ => 2,
                };
                // the complement of P_4 is P_4; from 5 on it is class one
                let chic = match a {
                    0..=2 => 0,
                    3 => 1,
                    4 => 2,
                    _ => a - 2,
                };
                (a.saturating_sub(1), chi, chic)
            }
            GraphFamily::Cycle => {
                let chi = if a % 2 == 0 { 2 } else { 3 };
                // odd complements are overfull, even ones class one
                let chic = match a {
                    0..=3 => 0,
                    4 => 1,
                    a if a % 2 == 1 => a - 2,
                    a => a - 3,
                };
                (a, chi, chic)
            }
        };
        GraphProfile { a, e, chi_g, chi_complement }
    }
}

/// One admissible parameter row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ParameterSet {
    pub v: u64,
    pub p: u64,
    pub a: u64,
    pub u: u64,
    pub e: u64,
    pub counts: ClassCounts,
}

impl ParameterSet {
    pub fn obstruction(&self) -> Obstruction {
        structural_obstruction(self)
    }
}

/// What the counts force on the UUU blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Obstruction {
    None,
    /// No PUU or AUU blocks, so the pairs inside U are covered by UUU blocks
    /// alone, which then form an STS(u).
    UuuMustBeSts(u64),
    /// As above, but no STS(u) exists.
    Blocked,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::None => f.write_str("none"),
            Obstruction::UuuMustBeSts(u) => write!(f, "uuu-sts({u})"),
            Obstruction::Blocked => f.write_str("blocked"),
        }
    }
}

pub fn structural_obstruction(ps: &ParameterSet) -> Obstruction {
    if ps.u < 2 || ps.counts.puu != 0 || ps.counts.auu != 0 {
        return Obstruction::None;
    }
    if ps.u % 6 == 1 || ps.u % 6 == 3 {
        Obstruction::UuuMustBeSts(ps.u)
    } else {
        Obstruction::Blocked
    }
}

pub fn admissible_order(v: u64) -> bool {
    v % 6 == 1 || v % 6 == 3
}

/// All parameter rows at order `v`, by descending `p`. When the graph has at
/// least two vertices, `p` and `u` must be positive.
pub fn rows_at(profile: &GraphProfile, v: u64) -> Vec<ParameterSet> {
    let a = profile.a;
    if v < a || !admissible_order(v) {
        return Vec::new();
    }
    let positive = a >= 2;
    let mut rows = Vec::new();
    for u in 0..=v - a {
        let p = v - a - u;
        if positive && (p == 0 || u == 0) {
            continue;
        }
        if !lemma1_bounds(v, a, u, profile.e, profile.chi_g, profile.chi_complement).passes() {
            continue;
        }
        if let Some(counts) = class_counts(p, a, u, profile.e) {
            rows.push(ParameterSet { v, p, a, u, e: profile.e, counts });
        }
    }
    rows.sort_by(|x, y| y.p.cmp(&x.p));
    rows
}

/// Every admissible row with `v <= v_max`, by ascending `v` then descending `p`.
pub fn admissible_parameters(profile: &GraphProfile, v_max: u64) -> Vec<ParameterSet> {
    (profile.a.max(1)..=v_max).flat_map(|v| rows_at(profile, v)).collect()
}

/// Smallest order with an admissible row, and the rows there. The scan stops
/// at `4a + 16`.
pub fn min_admissible_v(profile: &GraphProfile) -> Option<(u64, Vec<ParameterSet>)> {
    let limit = 4 * profile.a + 16;
    (profile.a.max(1)..=limit).find_map(|v| {
        let rows = rows_at(profile, v);
        (!rows.is_empty()).then_some((v, rows))
    })
}

pub fn min_admissible_v_for_graph(g: &LabeledGraph) -> Option<(u64, Vec<ParameterSet>)> {
    min_admissible_v(&GraphProfile::of_graph(g))
}

/// The minimal rows of one family for `a` in a range, in the order of `a`.
pub fn family_table(family: GraphFamily, a_from: u64, a_to: u64) -> Vec<(u64, Vec<ParameterSet>)> {
    let lo = a_from.max(family.min_order() as u64);
    (lo..=a_to)
        .into_par_iter()
        .map(|a| {
            let rows = min_admissible_v(&GraphProfile::of_family(family, a)).map(|(_, r)| r).unwrap_or_default();
            (a, rows)
        })
        .collect()
}

/// Aligned plain-text table, one group per `a`, rows at the minimal order.
pub fn format_table(family: GraphFamily, table: &[(u64, Vec<ParameterSet>)]) -> String {
    let mut out = format!("{family}\n");
    let _ = writeln!(out, "{:>3} {:>4}  {:<14} {:<36} {}", "a", "v", "(p,a,u)", "(PPU,PAA,PAU,PUU,AAU,AUU,UUU)", "obstruction");
    for (a, rows) in table {
        for (i, r) in rows.iter().enumerate() {
            let (ac, vc) = if i == 0 { (a.to_string(), r.v.to_string()) } else { (String::new(), String::new()) };
            let _ = writeln!(
                out,
                "{:>3} {:>4}  {:<14} {:<36} {}",
                ac,
                vc,
                format!("({},{},{})", r.p, r.a, r.u),
                r.counts.to_string(),
                r.obstruction()
            );
        }
    }
    out
}

/// One record per row: `family a v p u e PPU PAA PAU PUU AAU AUU UUU obstruction`.
pub fn format_records(family: GraphFamily, table: &[(u64, Vec<ParameterSet>)]) -> String {
    let mut out = String::new();
    for (a, rows) in table {
        for r in rows {
            let c = r.counts.as_array();
            let _ = writeln!(
                out,
                "{family} {a} {} {} {} {} {} {} {} {} {} {} {} {}",
                r.v, r.p, r.u, r.e, c[0], c[1], c[2], c[3], c[4], c[5], c[6], r.obstruction()
            );
        }
    }
    out
}
