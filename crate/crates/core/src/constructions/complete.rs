//! Complete graphs `K_a` in STS(3a) (odd `a`) and STS(3a+1) (even `a`).

use crate::design::{graph_family, Block, EmbeddingCertificate, GraphFamily, TripleSystem};
use crate::search::{self, SearchConfig};

use super::decompose::{decompose_a_matchings, decompose_p_matchings, degree_pattern_holds, near_one_factorization, p_index};
use super::orbit::{expand_orbits, Cyc, CyclicPresentation};
use super::{certify, ConstructionError};

/// Seed used when a small even case has to be completed by search.
pub const COMPLETION_SEED: u64 = 0x6b5f_636f_6d70;

/// The presentation over `Z_a x {0,1,2}` used for odd `a`: blocks
/// `{i_k, j_k, ((i+j)/2)_(k-1)}` for `i != j`, and `{i_0, i_1, i_2}`.
pub fn odd_complete_presentation(a: u32) -> Result<CyclicPresentation, ConstructionError> {
    if a < 3 || a % 2 == 0 {
        return Err(ConstructionError::InvalidParameter(format!("need an odd a >= 3, got {a}")));
    }
    let n = a as i64;
    let half = (n + 1) / 2; // inverse of 2 mod a
    let mut cp = CyclicPresentation::new(a, vec![0, 1, 2], Vec::new());
    for k in 0..3u8 {
        let prev = (k + 2) % 3;
        for d in 1..=(n - 1) / 2 {
            cp.base_blocks.push([Cyc(0, k), Cyc(d, k), Cyc((d * half).rem_euclid(n), prev)]);
        }
    }
    cp.base_blocks.push([Cyc(0, 0), Cyc(0, 1), Cyc(0, 2)]);
    Ok(cp)
}

/// Embeds `K_a`. Odd `a` uses [`odd_complete_presentation`] with
/// `P = Z_a x {0}`, `A = Z_a x {1}`, `U = Z_a x {2}`. Even `a >= 6` builds
/// the system from the three matching decompositions on
/// `P = {p_{i,j}}`, `A = {a_{i,j}}`, `U = {u_{i,j}} + {u_inf}`.
///
/// `a = 2` and `a = 4` have no decomposition of the required shape. For
/// `a = 4` the same parameters `(p, u) = (4, 5)` are reached by completing
/// seeded triples; `K_2` does not embed in the Fano plane at all, so `a = 2`
/// returns the smallest order found by the seeded search (13).
pub fn embed_complete(a: usize) -> Result<EmbeddingCertificate, ConstructionError> {
    match a {
        0 | 1 => Err(ConstructionError::InvalidParameter(format!("need a >= 2, got {a}"))),
        2 => complete_by_search(2, None),
        4 => complete_by_search(4, Some((4, 5))),
        _ if a % 2 == 1 => embed_odd(a),
        _ => embed_even(a),
    }
}

fn embed_odd(a: usize) -> Result<EmbeddingCertificate, ConstructionError> {
    let cp = odd_complete_presentation(a as u32)?;
    let ts = expand_orbits(&cp)?;
    let part = |k: u8| (0..a as i64).map(|i| cp.label(Cyc(i, k))).collect::<Vec<_>>();
    let av = part(1);
    let edges = all_pairs(&av);
    certify(ts, &part(0), &av, &part(2), &edges)
}

fn all_pairs(v: &[String]) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (i, x) in v.iter().enumerate() {
        for y in &v[i + 1..] {
            out.push((x.clone(), y.clone()));
        }
    }
    out
}

fn embed_even(a: usize) -> Result<EmbeddingCertificate, ConstructionError> {
    let l = a / 2;
    let pd = decompose_p_matchings(l)?;
    if !pd.is_valid() || !degree_pattern_holds(&pd, l) {
        return Err(ConstructionError::Defect { pair: None, detail: format!("P decomposition for l={l} is malformed") });
    }
    let ad = decompose_a_matchings(a)?;
    let ud = near_one_factorization(a + 1)?;

    // points: p_{i,j} = 2i+j, a vertex x of Z_a, u vertex y of Z_{a+1}
    let p_label = |x: usize| format!("p{}_{}", x / 2, x % 2);
    let a_label = |x: usize| if x < l { format!("a{x}_0") } else { format!("a{}_1", x - l) };
    let u_label = |y: usize| match y {
        0 => "u_inf".to_string(),
        y if y <= l => format!("u{}_0", y - 1),
        y => format!("u{}_1", a - y),
    };
    // Z_{a+1} vertex of u_{i,j}
    let u_vertex = |i: usize, j: usize| if j == 0 { i + 1 } else { a - i };
    let a_vertex = |i: usize, j: usize| i + j * l;

    let mut labels: Vec<String> = (0..a).map(p_label).collect();
    labels.extend((0..a).map(a_label));
    labels.extend((0..=a).map(u_label));
    let (po, ao, uo) = (0u32, a as u32, 2 * a as u32);
    let mut blocks = Vec::new();
    let mut push = |x: u32, y: u32, z: u32| blocks.push(Block::new(x, y, z).expect("distinct points"));

    for c in &pd.classes {
        let u = match c.name.as_str() {
            "inf" => 0,
            name => {
                let (i, j) = parse_pair(name);
                u_vertex(i, j)
            }
        };
        for &(x, y) in &c.edges {
            push(po + x as u32, po + y as u32, uo + u as u32);
        }
    }
    for c in &ad.classes {
        let (i, j) = parse_pair(&c.name);
        let p = po + p_index(i, j) as u32;
        for &(x, y) in &c.edges {
            push(p, ao + x as u32, ao + y as u32);
        }
    }
    for i in 0..l {
        for j in 0..2 {
            push(po + p_index(i, 1) as u32, ao + a_vertex(i, j) as u32, uo + u_vertex(i, j) as u32);
            let missing = u_vertex(i, j);
            for &(x, y) in &ud.classes[missing].edges {
                push(ao + a_vertex(i, j) as u32, uo + x as u32, uo + y as u32);
            }
        }
        push(po + p_index(i, 0) as u32, uo + u_vertex(i, 0) as u32, uo + u_vertex(i, 1) as u32);
    }
    let ts = TripleSystem::new(labels.clone(), blocks)?;
    super::orbit::check_steiner(&ts)?;
    let p: Vec<String> = labels[..a].to_vec();
    let av: Vec<String> = labels[a..2 * a].to_vec();
    let u: Vec<String> = labels[2 * a..].to_vec();
    let edges = all_pairs(&av);
    certify(ts, &p, &av, &u, &edges)
}

fn parse_pair(name: &str) -> (usize, usize) {
    let inner = name.trim_start_matches('(').trim_end_matches(')');
    let (i, j) = inner.split_once(',').expect("class names are (i,j)");
    (i.parse().unwrap(), j.parse().unwrap())
}

fn complete_by_search(a: usize, params: Option<(usize, usize)>) -> Result<EmbeddingCertificate, ConstructionError> {
    let g = graph_family(GraphFamily::Complete, a)?;
    let cfg = SearchConfig { seed: COMPLETION_SEED, ..SearchConfig::default() };
    let found = match params {
        Some((p, u)) => search::embed_with_parameters(&g, p, u, &cfg).map_err(ConstructionError::from)?,
        None => {
            search::search_min_embedding(&g, 3 * a as u64 + 16, &cfg)
                .certificate
                .ok_or_else(|| ConstructionError::NotFound(format!("no embedding of K_{a} found")))?
        }
    };
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::verify_embedding;

    #[test]
    fn k3_in_sts9() {
        let cert = embed_complete(3).unwrap();
        assert_eq!(cert.ts.v(), 9);
        assert!(verify_embedding(&cert).unwrap().ok());
        assert_eq!(cert.graph.edge_count(), 3);
    }

    #[test]
    fn odd_and_even_orders() {
        for a in [5usize, 6, 7, 8, 9, 10, 11, 12] {
            let cert = embed_complete(a).unwrap();
            let v = if a % 2 == 1 { 3 * a } else { 3 * a + 1 };
            assert_eq!(cert.ts.v(), v, "a={a}");
            assert!(verify_embedding(&cert).unwrap().ok(), "a={a}");
            if a % 2 == 0 {
                let a = a as u64;
                assert_eq!(cert.counts().as_array(), [a * (a - 1) / 2, a * (a - 1) / 2, a, a / 2, 0, a * a / 2, 0]);
            }
        }
    }

    #[test]
    fn k4_by_completion_has_the_same_census() {
        let cert = embed_complete(4).unwrap();
        assert_eq!(cert.ts.v(), 13);
        assert!(verify_embedding(&cert).unwrap().ok());
        assert_eq!(cert.counts().as_array(), [6, 6, 4, 2, 0, 8, 0]);
    }
}
