use std::collections::{BTreeMap, BTreeSet};

use super::jump::JumpTuple;
use super::AugmentedInstance;
use crate::vset::VSet;

/// Iterated jumps from a start position: `z` are positions, `u` the vertices
/// at them and `b` the prefix sets ending before them. The length is `s + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    pub z: Vec<u8>,
    pub u: Vec<u8>,
    pub b: Vec<VSet>,
}

impl Chain {
    pub fn s(&self) -> usize {
        self.z.len() - 1
    }

    /// The chain without its first entry.
    pub fn tail(&self) -> Chain {
        Chain { z: self.z[1..].to_vec(), u: self.u[1..].to_vec(), b: self.b[1..].to_vec() }
    }
}

/// The pair of jump tuples a chain family is built for.
#[derive(Debug, Clone)]
pub struct ChainFrame {
    pub p1: usize,
    pub r1: usize,
    pub p2: usize,
    pub r2: usize,
    pub a1: VSet,
    pub u1: VSet,
    pub a2: VSet,
    pub u2: VSet,
    pub x1: Vec<u8>,
    pub x2: Vec<u8>,
    pub tau: usize,
}

impl ChainFrame {
    pub fn new(j1: &JumpTuple, j2: &JumpTuple, tau: usize) -> Self {
        ChainFrame {
            p1: j1.p(),
            r1: j1.r(),
            p2: j2.p(),
            r2: j2.r(),
            a1: j1.before,
            u1: j1.upto(),
            a2: j2.before,
            u2: j2.upto(),
            x1: j1.seq.clone(),
            x2: j2.seq.clone(),
            tau,
        }
    }

    /// Possible (prefix set, vertex) pairs at position `z`.
    fn options(&self, aug: &AugmentedInstance, secs: &BTreeMap<usize, Vec<VSet>>, sections: &BTreeSet<VSet>, z: usize) -> Vec<(VSet, usize)> {
        let fixed = |a: VSet, p: usize, seq: &[u8]| -> Vec<(VSet, usize)> {
            let k = z - p;
            let b = seq[..k].iter().fold(a, |s, &v| s.with(v as usize));
            let u = seq[k] as usize;
            if sections.contains(&b) && aug.allowed[u].contains(z) {
                vec![(b, u)]
            } else {
                Vec::new()
            }
        };
        let in1 = z >= self.p1 && z < self.r1;
        let in2 = z >= self.p2 && z < self.r2;
        match (in1, in2) {
            (true, true) => {
                let f = fixed(self.a1, self.p1, &self.x1);
                return if f == fixed(self.a2, self.p2, &self.x2) { f } else { Vec::new() };
            }
            (true, false) => return fixed(self.a1, self.p1, &self.x1),
            (false, true) => return fixed(self.a2, self.p2, &self.x2),
            _ => {}
        }
        if z == self.r2 {
            if z > aug.n() || !sections.contains(&self.u2) {
                return Vec::new();
            }
            return aug.all().minus(self.u2).iter().filter(|&u| aug.allowed[u].contains(z)).map(|u| (self.u2, u)).collect();
        }
        let mut out = Vec::new();
        let fixed_vs: VSet = self.x1.iter().chain(&self.x2).map(|&v| v as usize).collect();
        for &b in secs.get(&(z - 1)).map(|v| v.as_slice()).unwrap_or(&[]) {
            if !self.u1.is_subset(b) || !b.is_subset(self.a2) {
                continue;
            }
            for u in self.u2.minus(b).minus(fixed_vs).iter() {
                if aug.allowed[u].contains(z) {
                    out.push((b, u));
                }
            }
        }
        out
    }
}

/// All chains with at most `tau + 1` entries starting in `[p1, r2]` whose last
/// entry is the only one in `[p2, r2]`, consecutive entries forming possible jumps.
pub fn enumerate_chains(aug: &AugmentedInstance, sections: &BTreeSet<VSet>, frame: &ChainFrame) -> Vec<Chain> {
    let mut secs: BTreeMap<usize, Vec<VSet>> = BTreeMap::new();
    for &s in sections {
        secs.entry(s.len()).or_default().push(s);
    }
    let opts: Vec<Vec<(VSet, usize)>> =
        (0..=frame.r2).map(|z| if z < frame.p1 { Vec::new() } else { frame.options(aug, &secs, sections, z) }).collect();
    let mut out = Vec::new();
    let mut cur = Chain { z: Vec::new(), u: Vec::new(), b: Vec::new() };
    for z in frame.p1..=frame.r2 {
        for &(b, u) in &opts[z] {
            push(&mut cur, z, u, b);
            extend(aug, frame, &opts, &mut cur, &mut out);
            pop(&mut cur);
        }
    }
    out.sort();
    out
}

fn push(c: &mut Chain, z: usize, u: usize, b: VSet) {
    c.z.push(z as u8);
    c.u.push(u as u8);
    c.b.push(b);
}

fn pop(c: &mut Chain) {
    c.z.pop();
    c.u.pop();
    c.b.pop();
}

fn extend(aug: &AugmentedInstance, frame: &ChainFrame, opts: &[Vec<(VSet, usize)>], cur: &mut Chain, out: &mut Vec<Chain>) {
    let i = cur.z.len() - 1;
    let z = cur.z[i] as usize;
    if z >= frame.p2 {
        out.push(cur.clone());
        return;
    }
    if i == frame.tau {
        return;
    }
    let (b, u) = (cur.b[i], cur.u[i] as usize);
    let closure = b.iter().fold(aug.adj[u].with(u), |s, v| s.union(aug.adj[v]));
    for z2 in z + 1..=frame.r2 {
        if !aug.up_clique(z, z2 - 1) {
            break;
        }
        for &(b2, u2) in &opts[z2] {
            if !b.is_subset(b2) || !closure.is_subset(b2) || aug.adj[u].contains(u2) {
                continue;
            }
            push(cur, z2, u2, b2);
            extend(aug, frame, opts, cur, out);
            pop(cur);
        }
    }
}
