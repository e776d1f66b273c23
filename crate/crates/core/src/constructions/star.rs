//! Stars `K_{1,a-1}` in small Steiner triple systems.
//!
//! Small cases come from stored systems; larger ones from presentations over
//! `Z_{a-1}` (a = 0, 4 mod 6), `Z_{6t+1}` (a = 1, 2, 3 mod 6) and `Z_{6t+3}`
//! (a = 5 mod 6) with four copies and one or three fixed points. The star's
//! edges all lie on PAA blocks through the centre, its non-edges on AAU
//! blocks, and every unplayable point is on a PPU block.

use std::fmt;

use crate::bounds::{self, GraphProfile};
use crate::design::io::parse_certificate;
use crate::design::{
    block_class, verify_embedding, Block, BlockClass, EmbeddingCertificate, GraphFamily, Point, PointPartition,
    TripleSystem,
};
use crate::skolem::{self, PairSequence, SequenceKind};

use super::cyclic::{cyclic_sts_base_blocks, sts_blocks};
use super::orbit::{check_steiner, expand_orbits, Cyc, CyclicPresentation, Fixed, OrbitPoint};
use super::{certify, embed_complete, ConstructionError};

const STAR_A3: &str = include_str!("../../data/star_a3.cert");
const STAR_A4: &str = include_str!("../../data/star_a4.cert");
const STAR_A6: &str = include_str!("../../data/star_a6.cert");

/// Position of the achieved order among the admissible orders at or above
/// the best possible one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Minimality {
    Minimal,
    Next,
    Third,
    Further(usize),
}

impl fmt::Display for Minimality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Minimality::Minimal => f.write_str("minimal"),
            Minimality::Next => f.write_str("next"),
            Minimality::Third => f.write_str("third"),
            Minimality::Further(k) => write!(f, "rank {}", k + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarMethod {
    /// `K_{1,1} = K_2`, built as a complete graph.
    Complete,
    /// One of the stored systems.
    Stored(&'static str),
    /// A cyclic presentation; the name identifies the block table used.
    Cyclic(&'static str),
}

impl fmt::Display for StarMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StarMethod::Complete => f.write_str("complete graph construction"),
            StarMethod::Stored(name) => write!(f, "stored system {name}"),
            StarMethod::Cyclic(name) => write!(f, "cyclic presentation {name}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StarEmbedding {
    pub cert: EmbeddingCertificate,
    pub a: usize,
    pub v: usize,
    pub minimality: Minimality,
    pub centre: String,
    pub method: StarMethod,
    pub presentation: Option<CyclicPresentation>,
    /// Block exchanges applied after expansion, in order.
    pub repairs: Vec<String>,
    /// True when the construction had to fall back on randomized search.
    pub search_required: bool,
}

/// The smallest order any embedding of `K_{1,a-1}` can have: the counting
/// bounds with `v = 1, 3 (mod 6)`, raised to 19 for `a = 4` where 13 and 15
/// are excluded by a finer case analysis.
pub fn star_lower_bound(a: usize) -> u64 {
    let profile = GraphProfile::of_family(GraphFamily::Star, a as u64);
    let from_bounds = bounds::min_admissible_v(&profile).map(|(v, _)| v).unwrap_or(0);
    let general = (4 * a as u64).saturating_sub(6);
    let mut v = from_bounds.max(general).max(3);
    while !bounds::admissible_order(v) {
        v += 1;
    }
    if a == 4 {
        v = v.max(19);
    }
    v
}

pub fn minimality(a: usize, v: usize) -> Minimality {
    let lo = star_lower_bound(a);
    let rank = (lo..v as u64).filter(|&x| bounds::admissible_order(x)).count();
    match rank {
        0 => Minimality::Minimal,
        1 => Minimality::Next,
        2 => Minimality::Third,
        k => Minimality::Further(k),
    }
}

/// Embeds `K_{1,a-1}` with the centre in A.
pub fn embed_star(a: usize) -> Result<StarEmbedding, ConstructionError> {
    let (cert, centre, method, presentation, repairs) = match a {
        0 | 1 => return Err(ConstructionError::InvalidParameter(format!("need a >= 2, got {a}"))),
        2 => {
            let cert = embed_complete(2)?;
            let centre = cert.ts.label(cert.partition.available()[0]).to_string();
            (cert, centre, StarMethod::Complete, None, Vec::new())
        }
        3 => stored(STAR_A3, "star_a3", "9")?,
        4 => stored(STAR_A4, "star_a4", "15")?,
        6 => stored(STAR_A6, "star_a6", "14")?,
        _ => {
            let b = match a % 6 {
                0 | 4 => four_copies_over_a_minus_1(a)?,
                1..=3 => three_fixed_over_6t_plus_1(a)?,
                _ => three_fixed_over_6t_plus_3(a)?,
            };
            let centre = b.cp.label(b.centre);
            (b.cert, centre, StarMethod::Cyclic(b.table), Some(b.cp), b.repairs)
        }
    };
    let v = cert.ts.v();
    Ok(StarEmbedding {
        cert,
        a,
        v,
        minimality: minimality(a, v),
        centre,
        method,
        presentation,
        repairs,
        search_required: false,
    })
}

type Parts = (EmbeddingCertificate, String, StarMethod, Option<CyclicPresentation>, Vec<String>);

fn stored(text: &str, name: &'static str, centre: &str) -> Result<Parts, ConstructionError> {
    let cert = load_stored(text)?;
    Ok((cert, centre.to_string(), StarMethod::Stored(name), None, Vec::new()))
}

/// Parses a stored certificate and insists that it validates and verifies.
pub fn load_stored(text: &str) -> Result<EmbeddingCertificate, ConstructionError> {
    let cert = parse_certificate(text)?;
    check_steiner(&cert.ts)?;
    let report = verify_embedding(&cert)?;
    if !report.ok() {
        return Err(ConstructionError::Defect { pair: None, detail: report.summary() });
    }
    Ok(cert)
}

/// The three stored systems by star order: `(a, certificate text)`.
pub fn stored_systems() -> [(usize, &'static str); 3] {
    [(3, STAR_A3), (4, STAR_A4), (6, STAR_A6)]
}

struct Built {
    cp: CyclicPresentation,
    cert: EmbeddingCertificate,
    centre: OrbitPoint,
    table: &'static str,
    repairs: Vec<String>,
}

struct Roles {
    p: Vec<OrbitPoint>,
    a: Vec<OrbitPoint>,
    u: Vec<OrbitPoint>,
    centre: OrbitPoint,
}

impl Roles {
    fn labels(&self, cp: &CyclicPresentation) -> [Vec<String>; 3] {
        let f = |v: &[OrbitPoint]| v.iter().map(|&x| cp.label(x)).collect();
        [f(&self.p), f(&self.a), f(&self.u)]
    }

    fn star_edges(&self, cp: &CyclicPresentation) -> Vec<(String, String)> {
        let c = cp.label(self.centre);
        self.a.iter().filter(|&&x| x != self.centre).map(|&x| (c.clone(), cp.label(x))).collect()
    }

    fn partition(&self, cp: &CyclicPresentation) -> Result<PointPartition, ConstructionError> {
        let pts = |v: &[OrbitPoint]| v.iter().map(|&x| cp.point(x)).collect::<Result<Vec<_>, _>>();
        Ok(PointPartition::new(cp.v(), &pts(&self.p)?, &pts(&self.a)?, &pts(&self.u)?)?)
    }
}

fn certify_roles(cp: &CyclicPresentation, ts: TripleSystem, roles: &Roles) -> Result<EmbeddingCertificate, ConstructionError> {
    let [p, a, u] = roles.labels(cp);
    certify(ts, &p, &a, &u, &roles.star_edges(cp))
}

fn seq(kind: SequenceKind, t: u32, seed: u64) -> Result<PairSequence, ConstructionError> {
    Ok(skolem::generate(kind, t, 1, seed)?)
}

fn b_of(s: &PairSequence, r: u32) -> i64 {
    s.pair(r).expect("difference within order").1 as i64
}

fn a_of(s: &PairSequence, r: u32) -> i64 {
    s.pair(r).expect("difference within order").0 as i64
}

/// Copy-4 blocks `{(c)_4, (d)_4, (e)_4}` of an STS(n): the cyclic base blocks
/// when a cyclic system exists, otherwise explicit blocks.
fn fourth_copy_sts(cp: &mut CyclicPresentation, n: u32) -> Result<(), ConstructionError> {
    match cyclic_sts_base_blocks(n) {
        Ok(base) => {
            for b in base {
                cp.base_blocks.push(b.map(|x| Cyc(x as i64, 4)));
            }
        }
        Err(ConstructionError::NoPresentation(_)) => {
            for b in sts_blocks(n)? {
                cp.fixed_blocks.push(b.map(|x| Cyc(x as i64, 4)));
            }
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// a = 0, 4 (mod 6): STS(4a-3) over Z_{a-1} x {1,2,3,4} + {inf}

fn four_copies_over_a_minus_1(a: usize) -> Result<Built, ConstructionError> {
    let mut last = None;
    for seed in 0..32u64 {
        match four_copies_attempt(a, seed) {
            Ok(b) => return Ok(b),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn four_copies_attempt(a: usize, seed: u64) -> Result<Built, ConstructionError> {
    let n = a as u32 - 1;
    let inf = Fixed(0);
    let mut cp = CyclicPresentation::new(n, vec![1, 2, 3, 4], vec![0]);
    let c = Cyc;
    let table: &'static str;
    let blocks = &mut cp.base_blocks;
    if a % 6 == 0 {
        let t = (a / 6) as u32;
        let ti = t as i64;
        let (s, cd) = match a % 24 {
            6 => (seq(SequenceKind::Hooked, 3 * t - 1, seed)?, seq(SequenceKind::Skolem, t - 1, seed)?),
            12 => (seq(SequenceKind::Skolem, 3 * t - 1, seed)?, seq(SequenceKind::Skolem, t - 1, seed)?),
            _ => (seq(SequenceKind::Split, 3 * t - 1, seed)?, seq(SequenceKind::Hooked, t - 1, seed)?),
        };
        let b = |r: u32| b_of(&s, r);
        let d = |r: u32| b_of(&cd, r);
        match a % 24 {
            6 => {
                table = "0_6 (a = 6 mod 24)";
                blocks.extend((1..3 * t).filter(|&r| r != 4).map(|r| [c(0, 1), c(r as i64, 1), c(b(r), 4)]));
                blocks.push([c(0, 1), c(4, 1), c(2, 3)]);
                blocks.push([inf, c(0, 2), c(-3, 1)]);
                blocks.extend(
                    (1..=6 * ti - 4)
                        .filter(|&r| r != 2 && r != 3 * ti - 2 && r != 3 * ti - 1)
                        .map(|r| [c(2 * r, 1), c(0, 2), c(r, 3)]),
                );
                blocks.extend([
                    [c(0, 1), c(0, 2), c(-1, 4)],
                    [c(-2, 1), c(0, 2), c(3 * ti - 1, 3)],
                    [c(-1, 1), c(0, 2), c(-1, 3)],
                    [c(4, 1), c(0, 2), c(b(4), 4)],
                    [c(0, 1), c(4, 2), c(b(4), 4)],
                ]);
                blocks.push([c(-1, 1), c(0, 3), c(3 * ti - 1, 3)]);
                blocks.extend((1..3 * t).filter(|&r| r != 4).map(|r| [c(0, 2), c(r as i64, 2), c(b(r), 4)]));
                blocks.push([c(0, 2), c(4, 2), c(2, 3)]);
                blocks.extend([[inf, c(0, 3), c(1, 4)], [c(0, 2), c(0, 3), c(3 * ti - 2, 3)]]);
                blocks.extend((1..3 * t).map(|r| [c(0, 4), c(r as i64, 4), c(b(r), 3)]));
                blocks.extend((1..t).map(|r| [c(0, 3), c(r as i64, 3), c(d(r) + ti - 1, 3)]));
            }
            12 => {
                table = "0_6 (a = 12 mod 24)";
                blocks.extend((1..3 * t).filter(|&r| r != 4).map(|r| [c(0, 1), c(r as i64, 1), c(b(r), 4)]));
                blocks.push([c(0, 1), c(4, 1), c(2, 3)]);
                blocks.push([inf, c(0, 1), c(3, 2)]);
                blocks.extend(
                    (1..=6 * ti - 4)
                        .filter(|&r| r != 2 && r != 3 * ti - 2 && r != 3 * ti - 1)
                        .map(|r| [c(0, 1), c(-2 * r, 2), c(-r, 3)]),
                );
                blocks.extend([
                    [c(0, 1), c(0, 2), c(0, 4)],
                    [c(0, 1), c(2, 2), c(3 * ti + 1, 3)],
                    [c(0, 1), c(1, 2), c(0, 3)],
                    [c(4, 1), c(0, 2), c(b(4), 4)],
                    [c(0, 1), c(4, 2), c(b(4), 4)],
                ]);
                blocks.push([c(-1, 1), c(0, 3), c(3 * ti - 1, 3)]);
                blocks.extend((1..3 * t).filter(|&r| r != 4).map(|r| [c(0, 2), c(r as i64, 2), c(b(r), 4)]));
                blocks.push([c(0, 2), c(4, 2), c(2, 3)]);
                blocks.extend([[inf, c(0, 3), c(0, 4)], [c(0, 2), c(0, 3), c(3 * ti - 2, 3)]]);
                blocks.extend((1..3 * t).map(|r| [c(b(r), 3), c(0, 4), c(r as i64, 4)]));
                blocks.extend((1..t).map(|r| [c(0, 3), c(r as i64, 3), c(d(r) + ti - 1, 3)]));
            }
            _ => {
                table = "0_6 (a = 0, 18 mod 24)";
                let aa = |r: u32| a_of(&s, r);
                blocks.extend((1..3 * t).filter(|&r| r != 7).map(|r| [c(0, 1), c(r as i64, 1), c(b(r), 4)]));
                blocks.push([c(0, 1), c(7, 1), c(5, 3)]);
                blocks.push([inf, c(0, 1), c(5, 2)]);
                blocks.extend(
                    (1..=6 * ti - 5)
                        .filter(|&r| r != 4 && r != 3 * ti - 1 && r != 3 * ti)
                        .map(|r| [c(0, 1), c(1 - 2 * r, 2), c(2 - r, 3)]),
                );
                blocks.extend([
                    [c(0, 1), c(0, 2), c(3 * ti, 4)],
                    [c(0, 1), c(2, 2), c(2, 3)],
                    [c(0, 1), c(3, 2), c(4, 3)],
                    [c(0, 1), c(1, 2), c(3 * ti + 1, 3)],
                    [c(7, 1), c(0, 2), c(b(7), 4)],
                    [c(0, 1), c(7, 2), c(b(7), 4)],
                ]);
                blocks.push([c(0, 1), c(3, 3), c(3 * ti + 2, 3)]);
                blocks.extend((1..3 * t).filter(|&r| r != 7).map(|r| [c(0, 2), c(r as i64, 2), c(b(r), 4)]));
                blocks.push([c(0, 2), c(7, 2), c(5, 3)]);
                blocks.extend([[inf, c(0, 3), c(3 * ti - 1, 4)], [c(0, 2), c(3 * ti + 1, 3), c(-1, 3)]]);
                blocks.extend((1..3 * t).map(|r| [c(0, 3), c(-b(r), 4), c(-aa(r), 4)]));
                blocks.extend((1..t).map(|r| [c(0, 3), c(r as i64, 3), c(d(r) + ti - 1, 3)]));
            }
        }
    } else {
        let t = ((a - 4) / 6) as u32;
        let ti = t as i64;
        let q = 2 * t + 1;
        let qi = q as i64;
        let nn = n as i64;
        if a % 24 == 4 || a % 24 == 10 {
            table = "4_6 (a = 4, 10 mod 24)";
            let s = seq(SequenceKind::Skolem, 3 * t + 1, seed)?;
            let b = |r: u32| b_of(&s, r);
            let aq = a_of(&s, q);
            blocks.extend((1..=3 * t + 1).filter(|&r| r != q).map(|r| [c(0, 1), c(r as i64, 1), c(b(r), 4)]));
            blocks.push([c(qi, 1), c(0, 1), c(aq - qi, 3)]);
            blocks.push([inf, c(0, 1), c(-aq, 2)]);
            let skip = [(aq + qi).rem_euclid(nn), (aq - qi).rem_euclid(nn)];
            blocks.extend(
                (1..=6 * ti + 2).filter(|r| !skip.contains(&r.rem_euclid(nn))).map(|r| [c(aq - r, 1), c(0, 2), c(r, 3)]),
            );
            blocks.extend([[c(0, 1), c(qi, 2), c(b(q), 4)], [c(0, 1), c(-qi, 2), c(aq, 4)]]);
            blocks.push([c(0, 1), c(-aq, 3), c(0, 4)]);
            blocks.extend((1..=3 * t + 1).filter(|&r| r != q).map(|r| [c(0, 2), c(r as i64, 2), c(b(r), 4)]));
            blocks.push([c(0, 2), c(-qi, 2), c(aq + qi, 3)]);
            blocks.extend([[c(0, 2), c(0, 3), c(0, 4)], [inf, c(0, 3), c(b(q), 4)]]);
            blocks.extend((1..=3 * t + 1).filter(|&r| r != q).map(|r| [c(0, 3), c(r as i64, 3), c(b(r), 4)]));
            blocks.push([c(0, 3), c(qi, 3), c(2 * qi, 3)]);
        } else {
            table = "4_6 (a = 16, 22 mod 24)";
            let s = seq(SequenceKind::Hooked, 3 * t + 1, seed)?;
            let b = |r: u32| b_of(&s, r);
            let aa = |r: u32| a_of(&s, r);
            let aq = aa(q);
            // smallest i making both k and l nonzero
            let (i, j, k, l) = (1..=(3 * t + 1) / 2)
                .map(|i| {
                    let j = 2 * i;
                    let k = aa(i) + b(j) + 3 + aq;
                    (i, j, k, k - i as i64)
                })
                .find(|&(_, _, k, l)| k.rem_euclid(nn) != 0 && l.rem_euclid(nn) != 0)
                .ok_or_else(|| ConstructionError::NotFound("no admissible index i".into()))?;
            let (ii, ji) = (i as i64, j as i64);
            blocks.extend((1..=3 * t + 1).filter(|&r| r != j).map(|r| [c(0, 1), c(r as i64, 1), c(b(r), 4)]));
            blocks.push([c(0, 1), c(ji, 1), c(2 * k - 1 - aq, 3)]);
            blocks.push([inf, c(0, 1), c(-aq - 3, 2)]);
            let skip = [k.rem_euclid(nn), l.rem_euclid(nn)];
            blocks.extend(
                (1..=6 * ti + 2)
                    .filter(|r| !skip.contains(&r.rem_euclid(nn)))
                    .map(|r| [c(aq + 3 - r, 1), c(0, 2), c(2 + r, 3)]),
            );
            blocks.extend([[c(0, 1), c(b(j) + aa(i), 2), c(b(j), 4)], [c(0, 1), c(aa(j) + b(i), 2), c(aa(j), 4)]]);
            blocks.push([c(0, 1), c(-aq - 1, 3), c(-1, 4)]);
            blocks.extend((1..=3 * t + 1).filter(|&r| r != i).map(|r| [c(0, 2), c(-(r as i64), 2), c(-b(r), 4)]));
            blocks.push([c(0, 2), c(ii, 2), c(2 + k, 3)]);
            blocks.extend([[inf, c(0, 3), c(b(q), 4)], [c(0, 2), c(2, 3), c(1, 4)]]);
            blocks.extend((1..=3 * t + 1).filter(|&r| r != q).map(|r| [c(0, 3), c(r as i64, 3), c(b(r), 4)]));
            blocks.push([c(0, 3), c(qi, 3), c(2 * qi, 3)]);
        }
        fourth_copy_sts(&mut cp, n)?;
    }
    let nn = n as i64;
    let roles = Roles {
        p: (0..nn).map(|i| Cyc(i, 1)).collect(),
        a: (0..nn).map(|i| Cyc(i, 2)).chain([inf]).collect(),
        u: (0..nn).flat_map(|i| [Cyc(i, 3), Cyc(i, 4)]).collect(),
        centre: inf,
    };
    let ts = expand_orbits(&cp)?;
    let cert = certify_roles(&cp, ts, &roles)?;
    Ok(Built { cp, cert, centre: inf, table, repairs: Vec::new() })
}

// ---------------------------------------------------------------------------
// a = 1, 2, 3 (mod 6): STS(24t+7) over Z_{6t+1} x {1,2,3,4} + {inf_1, inf_2, inf_3}

fn three_fixed_over_6t_plus_1(a: usize) -> Result<Built, ConstructionError> {
    let t = ((a - 1) / 6) as u32;
    let n = 6 * t + 1;
    let nn = n as i64;
    let ti = t as i64;
    let left = t % 4 == 0 || t % 4 == 3;
    let (s, shift, table) = if left {
        (skolem::special_skolem(3 * t)?, 0, "three_a (t = 0, 3 mod 4)")
    } else {
        let s = skolem::special_hooked(3 * t).or_else(|_| skolem::generate(SequenceKind::Hooked, 3 * t, 1, 0))?;
        (s, 1, "three_a (t = 1, 2 mod 4)")
    };
    let b = |r: u32| b_of(&s, r) + shift;
    let c = Cyc;
    let (i1, i2, i3) = (Fixed(1), Fixed(2), Fixed(3));
    let mut cp = CyclicPresentation::new(n, vec![1, 2, 3, 4], vec![1, 2, 3]);
    let blocks = &mut cp.base_blocks;
    blocks.extend((1..=3 * t).map(|r| [c(0, 1), c(r as i64, 1), c(b(r), 4)]));
    blocks.push([i1, c(0, 1), c(0, 3)]);
    blocks.push([i2, c(0, 1), c(0, 2)]);
    blocks.push([i1, i2, i3]);
    blocks.extend((1..=6 * ti).map(|r| [c(0, 1), c(2 * r, 2), c(r, 3)]));
    blocks.push([i1, c(0, 2), c(0, 4)]);
    blocks.push([i3, c(0, 1), c(0, 4)]);
    blocks.extend((1..=3 * t).map(|r| [c(0, 2), c(r as i64, 2), c(b(r), 4)]));
    blocks.push([i3, c(0, 2), c(0, 3)]);
    blocks.push([i2, c(0, 3), c(0, 4)]);
    blocks.extend((1..=3 * t).map(|r| [c(0, 3), c(r as i64, 3), c(b(r), 4)]));

    let residue = a % 6;
    let mut roles = Roles {
        p: (0..nn).map(|i| Cyc(i, 1)).chain([i1]).collect(),
        a: (0..nn).map(|i| Cyc(i, 2)).chain([i2]).collect(),
        u: (0..nn).flat_map(|i| [Cyc(i, 3), Cyc(i, 4)]).collect(),
        centre: i2,
    };
    match residue {
        2 => roles.u.push(i3),
        3 => roles.a.push(i3),
        _ => {
            roles.a.retain(|&x| x != Cyc(0, 2));
            roles.u.extend([Cyc(0, 2), i3]);
        }
    }
    if residue == 3 {
        fourth_copy_sts(&mut cp, n)?;
        let ts = expand_orbits(&cp)?;
        let cert = certify_roles(&cp, ts, &roles)?;
        return Ok(Built { cp, cert, centre: i2, table, repairs: Vec::new() });
    }

    // The copy-4 system is relabelled so that {0_4, 1_4, x_4} is a block,
    // where x_4 is the third point of the PPU block through 0_1 and 1_1.
    let x = b(1).rem_euclid(nn) as u32;
    for blk in relabelled_sts(n, [0, 1, x])? {
        cp.fixed_blocks.push(blk.map(|y| Cyc(y as i64, 4)));
    }
    let mut ts = expand_orbits(&cp)?;
    let part = roles.partition(&cp)?;
    let mut repairs = Vec::new();
    let pt = |q: OrbitPoint| cp.point(q);

    // inf_3 onto a PPU block
    let b1 = b(1);
    let printed = [
        [c(0, 1), c(1, 1), c(b1, 4)],
        [c(0, 3), c(1, 3), c(b1, 4)],
        [c(0, 1), c(0, 3), i3],
        [c(1, 1), c(1, 3), i3],
    ];
    let printed_add = [
        [c(0, 1), c(1, 1), i3],
        [c(0, 3), c(1, 3), i3],
        [c(0, 1), c(0, 3), c(b1, 4)],
        [c(1, 1), c(1, 3), c(b1, 4)],
    ];
    let pending_fix = if residue == 1 { Some(pt(Cyc(0, 2))?) } else { None };
    let tolerate = |ts: &TripleSystem| {
        unplayable_without_ppu(ts, &part).iter().all(|&y| Some(y) == pending_fix) && !has_forbidden(ts, &part)
    };
    match try_printed_swap(&cp, &ts, &printed, &printed_add)? {
        Some(next) if tolerate(&next) => {
            repairs.push(format!("printed exchange for {}", cp.label(i3)));
            ts = next;
        }
        outcome => {
            let why = match outcome {
                None => "a removed block is absent".to_string(),
                Some(_) => "the result breaks another point".to_string(),
            };
            let (next, note) = pasch_join(&ts, &part, pt(i3)?, tolerate)
                .ok_or_else(|| ConstructionError::NotFound(format!("no exchange puts {} on a PPU block", cp.label(i3))))?;
            repairs.push(format!("printed exchange for {} skipped ({why}); applied {note}", cp.label(i3)));
            ts = next;
        }
    }

    if residue == 1 {
        // 0_2 onto a PPU block, removing its edge to inf_2
        let (k, h) = if left { (2, 1) } else { (4, 2) };
        let rem = [
            [i1, c(0, 2), c(0, 4)],
            [c(-k, 1), c(0, 2), c(-h, 3)],
            [i1, c(-k, 1), c(-k, 3)],
            [c(-h, 3), c(-k, 3), c(0, 4)],
        ];
        let add = [
            [i1, c(-k, 1), c(0, 2)],
            [c(-k, 1), c(-h, 3), c(-k, 3)],
            [i1, c(-k, 3), c(0, 4)],
            [c(0, 2), c(-h, 3), c(0, 4)],
        ];
        let complete = |ts: &TripleSystem| certify_roles(&cp, ts.clone(), &roles).is_ok();
        match try_printed_swap(&cp, &ts, &rem, &add)? {
            Some(next) if complete(&next) => {
                repairs.push(format!("printed exchange for {}", cp.label(Cyc(0, 2))));
                ts = next;
            }
            outcome => {
                let why = match outcome {
                    None => "a removed block is absent".to_string(),
                    Some(_) => "the result leaves a point of U off every PPU block".to_string(),
                };
                let (next, note) = pasch_join(&ts, &part, pt(Cyc(0, 2))?, complete).ok_or_else(|| {
                    ConstructionError::NotFound(format!("no exchange puts {} on a PPU block", cp.label(Cyc(0, 2))))
                })?;
                repairs.push(format!("printed exchange for {} skipped ({why}); applied {note}", cp.label(Cyc(0, 2))));
                ts = next;
            }
        }
    }
    check_steiner(&ts)?;
    let cert = certify_roles(&cp, ts, &roles)?;
    Ok(Built { cp, cert, centre: i2, table, repairs })
}

/// Blocks of an STS(n) on `0..n` relabelled so that `target` is a block.
fn relabelled_sts(n: u32, target: [u32; 3]) -> Result<Vec<[u32; 3]>, ConstructionError> {
    let blocks = sts_blocks(n)?;
    let first = blocks[0];
    let mut map = vec![u32::MAX; n as usize];
    for k in 0..3 {
        map[first[k] as usize] = target[k];
    }
    let mut free = (0..n).filter(|y| !target.contains(y));
    for slot in map.iter_mut() {
        if *slot == u32::MAX {
            *slot = free.next().expect("bijection");
        }
    }
    Ok(blocks.iter().map(|b| b.map(|y| map[y as usize])).collect())
}

fn pairs_of(blocks: &[Block]) -> Vec<(Point, Point)> {
    let mut v: Vec<(Point, Point)> = blocks.iter().flat_map(|b| b.pairs()).collect();
    v.sort_unstable();
    v
}

/// Removes four blocks and adds four covering the same pairs. `None` when a
/// block to remove is not in the system.
fn try_printed_swap(
    cp: &CyclicPresentation,
    ts: &TripleSystem,
    remove: &[[OrbitPoint; 3]; 4],
    add: &[[OrbitPoint; 3]; 4],
) -> Result<Option<TripleSystem>, ConstructionError> {
    let to_block = |b: &[OrbitPoint; 3]| -> Result<Block, ConstructionError> {
        let [x, y, z] = [cp.point(b[0])?, cp.point(b[1])?, cp.point(b[2])?];
        Block::new(x, y, z).ok_or_else(|| ConstructionError::InvalidParameter("degenerate exchange block".into()))
    };
    let rem: Vec<Block> = remove.iter().map(to_block).collect::<Result<_, _>>()?;
    let add: Vec<Block> = add.iter().map(to_block).collect::<Result<_, _>>()?;
    if pairs_of(&rem) != pairs_of(&add) {
        return Err(ConstructionError::Defect {
            pair: None,
            detail: "exchange blocks do not cover the same pairs".into(),
        });
    }
    if rem.iter().any(|b| !ts.has_block(b)) {
        return Ok(None);
    }
    let blocks = ts.blocks().iter().copied().filter(|b| !rem.contains(b)).chain(add);
    Ok(Some(ts.with_blocks(blocks)?))
}

fn unplayable_without_ppu(ts: &TripleSystem, part: &PointPartition) -> Vec<Point> {
    let mut seen = vec![false; ts.v()];
    for b in ts.blocks() {
        if block_class(part, b) == BlockClass::Ppu {
            for x in b.points() {
                seen[x as usize] = true;
            }
        }
    }
    part.unplayable().iter().copied().filter(|&x| !seen[x as usize]).collect()
}

fn has_forbidden(ts: &TripleSystem, part: &PointPartition) -> bool {
    ts.blocks().iter().any(|b| block_class(part, b) == BlockClass::Forbidden)
}

/// Looks for a Pasch configuration whose switch puts `x` on a block with two
/// played points, accepting the first result that passes `accept`.
fn pasch_join(
    ts: &TripleSystem,
    part: &PointPartition,
    x: Point,
    accept: impl Fn(&TripleSystem) -> bool,
) -> Option<(TripleSystem, String)> {
    let played = part.played();
    for (i, &p) in played.iter().enumerate() {
        for &q in &played[i + 1..] {
            let (Some(w), Some(s1), Some(s2)) = (ts.third(p, q), ts.third(x, p), ts.third(x, q)) else { continue };
            if w == x || s1 == q || s2 == p || s1 == w || s2 == w {
                continue;
            }
            if ts.third(s1, s2) != Some(w) {
                continue;
            }
            let blk = |a, b, c| Block::new(a, b, c).expect("pasch points are distinct");
            let old = [blk(p, q, w), blk(s1, s2, w), blk(x, p, s1), blk(x, q, s2)];
            let new = [blk(x, p, q), blk(x, s1, s2), blk(w, p, s1), blk(w, q, s2)];
            let blocks = ts.blocks().iter().copied().filter(|b| !old.contains(b)).chain(new);
            let Ok(next) = ts.with_blocks(blocks) else { continue };
            if next.is_sts() && accept(&next) {
                let show = |b: &[Block; 4]| b.iter().map(|b| ts.block_label(b)).collect::<Vec<_>>().join(" ");
                return Some((next, format!("Pasch switch {} -> {}", show(&old), show(&new))));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// a = 5 (mod 6): STS(24t+15) over Z_{6t+3} x {1,2,3,4} + {inf_1, inf_2, inf_3}

fn three_fixed_over_6t_plus_3(a: usize) -> Result<Built, ConstructionError> {
    let t = ((a - 5) / 6) as u32;
    let n = 6 * t + 3;
    let nn = n as i64;
    let ti = t as i64;
    let left = t % 4 <= 1;
    let (s, shift, table) = if left {
        (seq(SequenceKind::Skolem, 3 * t + 1, 0)?, 0, "5_6 (t = 0, 1 mod 4)")
    } else {
        (seq(SequenceKind::Hooked, 3 * t + 1, 0)?, 1, "5_6 (t = 2, 3 mod 4)")
    };
    let b = |r: u32| b_of(&s, r) + shift;
    let c = Cyc;
    let (i1, i2, i3) = (Fixed(1), Fixed(2), Fixed(3));
    let mut cp = CyclicPresentation::new(n, vec![1, 2, 3, 4], vec![1, 2, 3]);
    let blocks = &mut cp.base_blocks;
    blocks.extend((1..=3 * t + 1).map(|r| [c(0, 1), c(r as i64, 1), c(b(r), 4)]));
    blocks.push([i1, c(0, 1), c(0, 3)]);
    blocks.extend([[i2, c(0, 1), c(0, 2)], [i1, i2, i3]]);
    blocks.extend((1..=6 * ti + 2).map(|r| [c(0, 1), c(2 * r, 2), c(r, 3)]));
    blocks.extend([[i1, c(0, 2), c(0, 4)], [i3, c(0, 1), c(0, 4)]]);
    blocks.extend((1..=3 * t + 1).map(|r| [c(0, 2), c(r as i64, 2), c(b(r), 4)]));
    blocks.push([i3, c(0, 2), c(0, 3)]);
    blocks.push([i2, c(0, 3), c(0, 4)]);
    blocks.extend((1..=3 * t + 1).map(|r| [c(0, 3), c(r as i64, 3), c(b(r), 4)]));
    fourth_copy_sts(&mut cp, n)?;
    let roles = Roles {
        p: (0..nn).map(|i| Cyc(i, 1)).chain([i1]).collect(),
        a: (0..nn).map(|i| Cyc(i, 2)).chain([i2, i3]).collect(),
        u: (0..nn).flat_map(|i| [Cyc(i, 3), Cyc(i, 4)]).collect(),
        centre: i2,
    };
    let ts = expand_orbits(&cp)?;
    let cert = certify_roles(&cp, ts, &roles)?;
    Ok(Built { cp, cert, centre: i2, table, repairs: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: usize) -> StarEmbedding {
        let e = embed_star(a).unwrap();
        assert!(verify_embedding(&e.cert).unwrap().ok(), "a={a}");
        assert_eq!(e.cert.partition.a(), a, "a={a}");
        let c = e.cert.graph.vertex(&e.centre).unwrap();
        assert_eq!(e.cert.graph.degree(c), a - 1);
        assert_eq!(e.cert.graph.edge_count(), a - 1);
        e
    }

    #[test]
    fn stored_systems_verify() {
        for (a, text) in stored_systems() {
            let cert = load_stored(text).unwrap();
            assert_eq!(cert.partition.a(), a);
        }
        assert_eq!(check(3).v, 13);
        assert_eq!(check(4).v, 19);
        assert_eq!(check(6).v, 19);
    }

    #[test]
    fn formula_orders() {
        for a in 5..=29 {
            if a == 6 {
                continue;
            }
            let e = check(a);
            let want = match a % 6 {
                0 | 4 => 4 * a - 3,
                1 => 4 * a + 3,
                2 => 4 * a - 1,
                _ => 4 * a - 5,
            };
            assert_eq!(e.v, want, "a={a}");
        }
    }

    #[test]
    fn minimality_tags() {
        assert_eq!(check(10).minimality, Minimality::Minimal);
        assert_eq!(check(12).minimality, Minimality::Next);
        assert_eq!(check(13).minimality, Minimality::Third);
        assert_eq!(check(11).minimality, Minimality::Minimal);
    }
}
