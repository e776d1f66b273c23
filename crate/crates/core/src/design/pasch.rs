use std::collections::BTreeSet;

use super::system::{Block, Point, TripleSystem};
use super::DesignError;

/// Four blocks `{u,v,z}, {u,y,w}, {x,v,w}, {x,y,z}` on six points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PaschConfiguration {
    pub u: Point,
    pub v: Point,
    pub z: Point,
    pub y: Point,
    pub w: Point,
    pub x: Point,
}

impl PaschConfiguration {
    pub fn blocks(&self) -> [Block; 4] {
        let PaschConfiguration { u, v, z, y, w, x } = *self;
        [blk(u, v, z), blk(u, y, w), blk(x, v, w), blk(x, y, z)]
    }

    /// The four blocks that cover the same pairs the other way.
    pub fn switched_blocks(&self) -> [Block; 4] {
        let PaschConfiguration { u, v, z, y, w, x } = *self;
        [blk(u, v, w), blk(u, y, z), blk(x, v, z), blk(x, y, w)]
    }

    /// The configuration formed by the switched blocks; switching it restores
    /// the original.
    pub fn image(&self) -> PaschConfiguration {
        PaschConfiguration { z: self.w, w: self.z, ..*self }
    }

    pub fn points(&self) -> [Point; 6] {
        [self.u, self.v, self.z, self.y, self.w, self.x]
    }

    fn key(&self) -> [Block; 4] {
        let mut b = self.blocks();
        b.sort_unstable();
        b
    }
}

fn blk(a: Point, b: Point, c: Point) -> Block {
    Block::new(a, b, c).expect("pasch points are distinct")
}

/// Every Pasch configuration of `ts`, each listed once (deduplicated by its
/// set of four blocks), in a deterministic order.
pub fn find_paschs(ts: &TripleSystem) -> Vec<PaschConfiguration> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let v = ts.v() as Point;
    for u in 0..v {
        let through: Vec<Block> = ts.blocks().iter().copied().filter(|b| b.contains(u)).collect();
        for (i, b1) in through.iter().enumerate() {
            for b2 in &through[i + 1..] {
                let [p1, q1] = others(b1, u);
                let [p2, q2] = others(b2, u);
                for (vv, z) in [(p1, q1), (q1, p1)] {
                    for (w, y) in [(p2, q2), (q2, p2)] {
                        let Some(x) = ts.third(vv, w) else { continue };
                        if [u, vv, z, y, w].contains(&x) {
                            continue;
                        }
                        if ts.third(x, y) != Some(z) {
                            continue;
                        }
                        let pc = PaschConfiguration { u, v: vv, z, y, w, x };
                        if seen.insert(pc.key()) {
                            out.push(pc);
                        }
                    }
                }
            }
        }
    }
    out
}

fn others(b: &Block, u: Point) -> [Point; 2] {
    let mut it = b.points().into_iter().filter(|&p| p != u);
    [it.next().unwrap(), it.next().unwrap()]
}

/// Replaces the configuration's four blocks with the switched four.
pub fn pasch_switch(ts: &TripleSystem, pc: &PaschConfiguration) -> Result<TripleSystem, DesignError> {
    let old = pc.blocks();
    for b in &old {
        if !ts.has_block(b) {
            return Err(DesignError::MissingBlock(ts.block_label(b)));
        }
    }
    let blocks = ts.blocks().iter().copied().filter(|b| !old.contains(b)).chain(pc.switched_blocks());
    ts.with_blocks(blocks)
}
