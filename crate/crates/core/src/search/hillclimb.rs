//! Stinson's hill-climb for Steiner triple systems, with optional frozen
//! blocks that are never removed.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::design::{Block, TripleSystem};

const NONE: u32 = u32::MAX;

/// Partial triple system on `0..v` with per-point lists of uncovered pairs.
pub(crate) struct Climb {
    v: usize,
    third: Vec<u32>,
    frozen: Vec<bool>,
    live: Vec<Vec<u32>>,
    pos: Vec<u32>,
    live_points: Vec<u32>,
    lp_pos: Vec<u32>,
    blocks: usize,
}

impl Climb {
    pub(crate) fn new(v: usize) -> Self {
        let mut live = Vec::with_capacity(v);
        let mut pos = vec![NONE; v * v];
        for x in 0..v {
            let l: Vec<u32> = (0..v as u32).filter(|&y| y as usize != x).collect();
            for (i, &y) in l.iter().enumerate() {
                pos[x * v + y as usize] = i as u32;
            }
            live.push(l);
        }
        let live_points = if v > 1 { (0..v as u32).collect() } else { Vec::new() };
        let lp_pos = (0..v as u32).collect();
        Climb { v, third: vec![NONE; v * v], frozen: vec![false; v * v], live, pos, live_points, lp_pos, blocks: 0 }
    }

    /// Adds a block that can never be removed. Fails if one of its pairs is
    /// already covered.
    pub(crate) fn freeze(&mut self, b: [u32; 3]) -> bool {
        let [x, y, z] = b;
        if [(x, y), (x, z), (y, z)].iter().any(|&(s, t)| s == t || self.third[self.idx(s, t)] != NONE) {
            return false;
        }
        self.add(x, y, z);
        for (s, t) in [(x, y), (x, z), (y, z)] {
            let (i, j) = (self.idx(s, t), self.idx(t, s));
            self.frozen[i] = true;
            self.frozen[j] = true;
        }
        true
    }

    fn idx(&self, x: u32, y: u32) -> usize {
        x as usize * self.v + y as usize
    }

    fn drop_live(&mut self, x: u32, y: u32) {
        let xi = x as usize;
        let i = self.pos[self.idx(x, y)] as usize;
        let last = *self.live[xi].last().expect("pair is live");
        self.live[xi].swap_remove(i);
        if last != y {
            let li = self.idx(x, last);
            self.pos[li] = i as u32;
        }
        let yi = self.idx(x, y);
        self.pos[yi] = NONE;
        if self.live[xi].is_empty() {
            let k = self.lp_pos[xi] as usize;
            let moved = *self.live_points.last().unwrap();
            self.live_points.swap_remove(k);
            self.lp_pos[moved as usize] = k as u32;
            self.lp_pos[xi] = NONE;
        }
    }

    fn push_live(&mut self, x: u32, y: u32) {
        let xi = x as usize;
        if self.live[xi].is_empty() {
            self.lp_pos[xi] = self.live_points.len() as u32;
            self.live_points.push(x);
        }
        let i = self.idx(x, y);
        self.pos[i] = self.live[xi].len() as u32;
        self.live[xi].push(y);
    }

    fn cover(&mut self, x: u32, y: u32, w: u32) {
        let (i, j) = (self.idx(x, y), self.idx(y, x));
        self.third[i] = w;
        self.third[j] = w;
        self.drop_live(x, y);
        self.drop_live(y, x);
    }

    fn uncover(&mut self, x: u32, y: u32) {
        let (i, j) = (self.idx(x, y), self.idx(y, x));
        self.third[i] = NONE;
        self.third[j] = NONE;
        self.push_live(x, y);
        self.push_live(y, x);
    }

    fn add(&mut self, x: u32, y: u32, z: u32) {
        self.cover(x, y, z);
        self.cover(x, z, y);
        self.cover(y, z, x);
        self.blocks += 1;
    }

    fn remove(&mut self, x: u32, y: u32, z: u32) {
        self.uncover(x, y);
        self.uncover(x, z);
        self.uncover(y, z);
        self.blocks -= 1;
    }

    pub(crate) fn complete(&self) -> bool {
        self.live_points.is_empty()
    }

    /// Runs at most `iters` steps; true when every pair is covered.
    pub(crate) fn run(&mut self, rng: &mut ChaCha8Rng, iters: u64) -> bool {
        for _ in 0..iters {
            if self.complete() {
                return true;
            }
            let x = self.live_points[rng.random_range(0..self.live_points.len())];
            let l = &self.live[x as usize];
            let n = l.len();
            if n < 2 {
                // an odd number of uncovered pairs at x: v is not admissible
                return false;
            }
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let (y, z) = (l[i], l[j]);
            let w = self.third[self.idx(y, z)];
            if w != NONE {
                if self.frozen[self.idx(y, z)] {
                    continue;
                }
                self.remove(y, z, w);
            }
            self.add(x, y, z);
        }
        self.complete()
    }

    pub(crate) fn blocks(&self) -> Vec<Block> {
        let mut out = Vec::with_capacity(self.blocks);
        let v = self.v as u32;
        for x in 0..v {
            for y in x + 1..v {
                let z = self.third[self.idx(x, y)];
                if z != NONE && z > y {
                    out.push(Block::new(x, y, z).expect("distinct"));
                }
            }
        }
        out
    }
}

/// One hill-climb from scratch on `0..v`.
pub(crate) fn climb_sts(v: usize, rng: &mut ChaCha8Rng, iters: u64) -> Option<Vec<Block>> {
    let mut c = Climb::new(v);
    c.run(rng, iters).then(|| c.blocks())
}

pub(crate) fn numbered_labels(v: usize) -> Vec<String> {
    (1..=v).map(|x| x.to_string()).collect()
}

pub(crate) fn into_system(labels: Vec<String>, blocks: Vec<Block>) -> TripleSystem {
    let ts = TripleSystem::new(labels, blocks).expect("hill-climb blocks are well formed");
    debug_assert!(ts.is_sts());
    ts
}
