//! Edge decompositions of complete graphs into matchings.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ConstructionError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingClass {
    pub name: String,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingDecomposition {
    pub vertices: Vec<String>,
    pub classes: Vec<MatchingClass>,
}

impl MatchingDecomposition {
    pub fn class(&self, name: &str) -> Option<&MatchingClass> {
        self.classes.iter().find(|c| c.name == name)
    }

    pub fn degree_in(&self, class: &MatchingClass, x: usize) -> usize {
        class.edges.iter().filter(|&&(a, b)| a == x || b == x).count()
    }

    /// Problems with the decomposition: a class that is not a matching, or a
    /// host edge covered other than exactly once.
    pub fn problems(&self) -> Vec<String> {
        let n = self.vertices.len();
        let mut cover = vec![0u32; n * n];
        let mut out = Vec::new();
        for c in &self.classes {
            let mut deg = vec![0u32; n];
            for &(x, y) in &c.edges {
                if x == y || x >= n || y >= n {
                    out.push(format!("class {} has a bad edge ({x},{y})", c.name));
                    continue;
                }
                deg[x] += 1;
                deg[y] += 1;
                cover[x.min(y) * n + x.max(y)] += 1;
            }
            if let Some(x) = deg.iter().position(|&d| d > 1) {
                out.push(format!("class {} meets {} twice", c.name, self.vertices[x]));
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                let k = cover[x * n + y];
                if k != 1 {
                    out.push(format!("edge {}{} covered {k} times", self.vertices[x], self.vertices[y]));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.problems().is_empty()
    }
}

fn edge(x: usize, y: usize) -> (usize, usize) {
    (x.min(y), x.max(y))
}

/// Index of `p_{i,j}` among the `2l` played points.
pub fn p_index(i: usize, j: usize) -> usize {
    2 * i + j
}

/// Decomposition of `K_{2l}` on `p_{i,j}` (`i < l`, `j < 2`) into the
/// perfect matching `inf = {p_{i,0} p_{i,1}}` and, for each part `i`, two
/// matchings `(i,0)`, `(i,1)` that alternate around a `(2l-2)`-cycle through
/// every part except `i`, so that `p_{i,0}` and `p_{i,1}` have degree zero
/// exactly in `(i,0)` and `(i,1)`.
///
/// For `l = 2` no such cycles exist (the other part has no internal edge).
/// The result then still covers `K_4`, with the four cross edges placed in
/// `(0,0)` and `(0,1)` and empty classes for part 1; [`degree_pattern_holds`]
/// reports the missing property.
pub fn decompose_p_matchings(l: usize) -> Result<MatchingDecomposition, ConstructionError> {
    if l < 2 {
        return Err(ConstructionError::InvalidParameter(format!("need l >= 2, got {l}")));
    }
    let vertices = (0..l).flat_map(|i| (0..2).map(move |j| format!("p{i}_{j}"))).collect();
    let mut classes =
        vec![MatchingClass { name: "inf".into(), edges: (0..l).map(|i| (p_index(i, 0), p_index(i, 1))).collect() }];
    if l == 2 {
        let cross = [[(0, 2), (1, 3)], [(0, 3), (1, 2)]];
        for (j, e) in cross.iter().enumerate() {
            classes.push(MatchingClass { name: format!("(0,{j})"), edges: e.to_vec() });
        }
        for j in 0..2 {
            classes.push(MatchingClass { name: format!("(1,{j})"), edges: Vec::new() });
        }
        return Ok(MatchingDecomposition { vertices, classes });
    }
    let cycles = multipartite_cycles(l)?;
    for (i, cyc) in cycles.iter().enumerate() {
        for j in 0..2 {
            let edges = (0..cyc.len()).filter(|k| k % 2 == j).map(|k| edge(cyc[k], cyc[(k + 1) % cyc.len()])).collect();
            classes.push(MatchingClass { name: format!("({i},{j})"), edges });
        }
    }
    Ok(MatchingDecomposition { vertices, classes })
}

/// Whether `p_{i,0}, p_{i,1}` miss exactly the classes `(i,0)` and `(i,1)`
/// among the non-`inf` classes.
pub fn degree_pattern_holds(d: &MatchingDecomposition, l: usize) -> bool {
    d.classes.iter().filter(|c| c.name != "inf").all(|c| {
        (0..l).all(|i| {
            let own = c.name == format!("({i},0)") || c.name == format!("({i},1)");
            (0..2).all(|j| (d.degree_in(c, p_index(i, j)) == 0) == own)
        })
    })
}

/// Hamiltonian cycles `C_0..C_{l-1}` of `K_{2,2,...,2}` (parts `{p_{i,0},
/// p_{i,1}}`), with `C_i` avoiding part `i`, together using every edge once.
fn multipartite_cycles(l: usize) -> Result<Vec<Vec<usize>>, ConstructionError> {
    let n = 2 * l;
    let mut adj = vec![0u64; n];
    for x in 0..n {
        for y in 0..n {
            if x / 2 != y / 2 {
                adj[x] |= 1 << y;
            }
        }
    }
    for attempt in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xc7c1e5 ^ (l as u64) << 16 ^ attempt);
        let mut order: Vec<usize> = (0..l).collect();
        order.shuffle(&mut rng);
        let mut s = CycleSearch { l, adj: adj.clone(), cycles: vec![Vec::new(); l], budget: 200_000, rng };
        if s.solve(&order, 0) {
            return Ok(s.cycles);
        }
    }
    Err(ConstructionError::NotFound(format!("no cycle decomposition of K_(2^{l}) found")))
}

struct CycleSearch {
    l: usize,
    adj: Vec<u64>,
    cycles: Vec<Vec<usize>>,
    budget: u64,
    rng: ChaCha8Rng,
}

impl CycleSearch {
    fn solve(&mut self, order: &[usize], k: usize) -> bool {
        if k == order.len() {
            return true;
        }
        let part = order[k];
        let allowed: u64 = (0..2 * self.l).filter(|x| x / 2 != part).fold(0, |m, x| m | 1 << x);
        if (0..2 * self.l).any(|x| allowed >> x & 1 == 1 && (self.adj[x] & allowed).count_ones() < 2) {
            return false;
        }
        let start = allowed.trailing_zeros() as usize;
        let mut path = vec![start];
        self.extend(order, k, part, allowed, &mut path, 1 << start)
    }

    fn extend(&mut self, order: &[usize], k: usize, part: usize, allowed: u64, path: &mut Vec<usize>, used: u64) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.budget -= 1;
        let last = *path.last().unwrap();
        let start = path[0];
        if used == allowed {
            if self.adj[last] >> start & 1 == 0 {
                return false;
            }
            let cyc = path.clone();
            self.set_edges(&cyc, false);
            self.cycles[part] = cyc.clone();
            if self.solve(order, k + 1) {
                return true;
            }
            self.set_edges(&cyc, true);
            return false;
        }
        let mut next: Vec<usize> =
            (0..2 * self.l).filter(|&y| self.adj[last] >> y & 1 == 1 && (allowed & !used) >> y & 1 == 1).collect();
        next.shuffle(&mut self.rng);
        for y in next {
            // an unvisited vertex needs two free edges inside the cycle's range
            let rest = allowed & !used & !(1 << y);
            let dead = (0..2 * self.l).any(|z| {
                rest >> z & 1 == 1 && {
                    let free = self.adj[z] & (rest | 1 << y | 1 << start);
                    free.count_ones() < 2
                }
            });
            if dead {
                continue;
            }
            path.push(y);
            if self.extend(order, k, part, allowed, path, used | 1 << y) {
                return true;
            }
            path.pop();
            if self.budget == 0 {
                return false;
            }
        }
        false
    }

    fn set_edges(&mut self, cyc: &[usize], present: bool) {
        for k in 0..cyc.len() {
            let (x, y) = (cyc[k], cyc[(k + 1) % cyc.len()]);
            if present {
                self.adj[x] |= 1 << y;
                self.adj[y] |= 1 << x;
            } else {
                self.adj[x] &= !(1 << y);
                self.adj[y] &= !(1 << x);
            }
        }
    }
}

/// Decomposition of `K_a` on `Z_a` (`a` even) into the perfect matchings
/// `(i,0) = {{i-k, i+k+1} : 0 <= k < a/2}` and the matchings
/// `(i,1) = {{i-k, i+k} : 1 <= k < a/2}`, which miss `i` and `i + a/2`.
pub fn decompose_a_matchings(a: usize) -> Result<MatchingDecomposition, ConstructionError> {
    if a < 2 || a % 2 == 1 {
        return Err(ConstructionError::InvalidParameter(format!("need an even a >= 2, got {a}")));
    }
    let m = a as i64;
    let at = |x: i64| x.rem_euclid(m) as usize;
    let mut classes = Vec::with_capacity(a);
    for i in 0..m / 2 {
        let e0 = (0..m / 2).map(|k| edge(at(i - k), at(i + k + 1))).collect();
        classes.push(MatchingClass { name: format!("({i},0)"), edges: e0 });
        let e1 = (1..m / 2).map(|k| edge(at(i - k), at(i + k))).collect();
        classes.push(MatchingClass { name: format!("({i},1)"), edges: e1 });
    }
    Ok(MatchingDecomposition { vertices: (0..a).map(|x| x.to_string()).collect(), classes })
}

/// The near 1-factorization of `K_m` (`m` odd) on `Z_m`: class `i` is
/// `{{i-j, i+j} : 1 <= j <= (m-1)/2}` and misses only `i`.
pub fn near_one_factorization(m: usize) -> Result<MatchingDecomposition, ConstructionError> {
    if m % 2 == 0 {
        return Err(ConstructionError::InvalidParameter(format!("need odd m, got {m}")));
    }
    let n = m as i64;
    let at = |x: i64| x.rem_euclid(n) as usize;
    let classes = (0..n)
        .map(|i| MatchingClass {
            name: i.to_string(),
            edges: (1..=(n - 1) / 2).map(|j| edge(at(i - j), at(i + j))).collect(),
        })
        .collect();
    Ok(MatchingDecomposition { vertices: (0..m).map(|x| x.to_string()).collect(), classes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_matchings_cover_and_miss_the_right_parts() {
        for l in 3..=10 {
            let d = decompose_p_matchings(l).unwrap();
            assert_eq!(d.classes.len(), 2 * l + 1);
            assert!(d.is_valid(), "l={l}: {:?}", d.problems());
            assert!(degree_pattern_holds(&d, l), "l={l}");
        }
        let d = decompose_p_matchings(4).unwrap();
        let p20 = p_index(2, 0);
        let missing: Vec<&str> = d
            .classes
            .iter()
            .filter(|c| c.name != "inf" && d.degree_in(c, p20) == 0)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(missing, ["(2,0)", "(2,1)"]);
    }

    #[test]
    fn p_matchings_for_k4_cover_but_cannot_miss_parts() {
        let d = decompose_p_matchings(2).unwrap();
        assert!(d.is_valid());
        assert_eq!(d.classes.iter().map(|c| c.edges.len()).sum::<usize>(), 6);
        assert!(!degree_pattern_holds(&d, 2));
    }

    #[test]
    fn a_matchings() {
        let d = decompose_a_matchings(4).unwrap();
        let mut c00 = d.class("(0,0)").unwrap().edges.clone();
        c00.sort();
        assert_eq!(c00, [(0, 1), (2, 3)]);
        assert_eq!(d.classes.iter().map(|c| c.edges.len()).sum::<usize>(), 6);
        for a in (2..=20).step_by(2) {
            let d = decompose_a_matchings(a).unwrap();
            assert!(d.is_valid(), "a={a}: {:?}", d.problems());
            for i in 0..a / 2 {
                let c = d.class(&format!("({i},1)")).unwrap();
                assert_eq!(d.degree_in(c, i), 0);
                assert_eq!(d.degree_in(c, i + a / 2), 0);
                assert_eq!(c.edges.len(), a / 2 - 1);
            }
        }
        assert!(decompose_a_matchings(5).is_err());
    }

    #[test]
    fn near_one_factors() {
        let d = near_one_factorization(5).unwrap();
        let mut c0 = d.classes[0].edges.clone();
        c0.sort();
        assert_eq!(c0, [(1, 4), (2, 3)]);
        for (i, c) in d.classes.iter().enumerate() {
            assert_eq!(d.degree_in(c, 3) == 0, i == 3);
        }
        for m in (1..=21).step_by(2) {
            assert!(near_one_factorization(m).unwrap().is_valid());
        }
        assert!(near_one_factorization(4).is_err());
    }
}
