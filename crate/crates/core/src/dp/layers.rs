use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::chains::{enumerate_chains, Chain, ChainFrame};
use super::jump::JumpTuple;
use super::{keep_better, make_candidate, merge, AugmentedInstance, Candidate, Placement};
use crate::vset::VSet;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DpStats {
    pub jump_tuples: u64,
    pub chains: u64,
    pub dp_states: u64,
}

impl DpStats {
    pub fn add(&mut self, o: &DpStats) {
        self.jump_tuples += o.jump_tuples;
        self.chains += o.chains;
        self.dp_states += o.dp_states;
    }
}

/// Indices of two jump tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LayerOneState {
    pub j1: usize,
    pub j2: usize,
}

struct LayerOne<'a> {
    aug: &'a AugmentedInstance,
    jumps: &'a [JumpTuple],
    sections: &'a BTreeSet<VSet>,
    tau: usize,
    two: bool,
    memo: HashMap<(u32, u32), Option<Candidate>>,
    stats: &'a mut DpStats,
}

impl LayerOne<'_> {
    fn state_ok(&self, i1: usize, i2: usize) -> bool {
        let (j1, j2) = (&self.jumps[i1], &self.jumps[i2]);
        if !j1.before.is_subset(j2.before) || !j1.upto().is_subset(j2.upto()) {
            return false;
        }
        j1.block.inter(j2.block).iter().all(|v| j1.position_of(v) == j2.position_of(v))
    }

    fn value(&mut self, i1: usize, i2: usize) -> Option<Candidate> {
        if let Some(v) = self.memo.get(&(i1 as u32, i2 as u32)) {
            return v.clone();
        }
        self.stats.dp_states += 1;
        let n = self.aug.n();
        let (j1, j2) = (&self.jumps[i1], &self.jumps[i2]);
        let domain = j2.upto().minus(j1.before);
        let codomain = VSet::range(j1.p(), j2.r() - 1);
        let mut best = None;
        if j2.before.is_subset(j1.upto()) {
            if let Some(m) = merge(&j1.placement(n), &j2.placement(n)) {
                best = make_candidate(self.aug, m, domain, codomain, &[]);
            }
        } else {
            let (a1, a2) = (j1.before, j2.before);
            for i3 in 0..self.jumps.len() {
                let a3 = self.jumps[i3].before;
                if a3 == a1 || a3 == a2 || !a1.is_subset(a3) || !a3.is_subset(a2) {
                    continue;
                }
                if !self.state_ok(i1, i3) || !self.state_ok(i3, i2) {
                    continue;
                }
                let Some(l) = self.value(i1, i3) else { continue };
                let Some(r) = self.value(i3, i2) else { continue };
                if let Some(m) = merge(&l.map, &r.map) {
                    if let Some(c) = make_candidate(self.aug, m, domain, codomain, &[]) {
                        keep_better(&mut best, c);
                    }
                }
            }
            if self.two {
                let frame = ChainFrame::new(&self.jumps[i1], &self.jumps[i2], self.tau);
                for m in layer_two_dp(self.aug, self.sections, &frame, self.stats) {
                    if let Some(c) = make_candidate(self.aug, m, domain, codomain, &[]) {
                        keep_better(&mut best, c);
                    }
                }
            }
        }
        self.memo.insert((i1 as u32, i2 as u32), best.clone());
        best
    }
}

/// Best full placement of the augmented instance, running from the tuple of
/// `α2, α1` to the tuple of `ω1, ω2`.
pub fn layer_one_dp(
    aug: &AugmentedInstance,
    jumps: &[JumpTuple],
    sections: &BTreeSet<VSet>,
    tau: usize,
    use_layer_two: bool,
    stats: &mut DpStats,
) -> Option<Candidate> {
    let n = aug.n();
    let start = JumpTuple { before: VSet::EMPTY, block: VSet::range(0, 1), seq: vec![0, 1] };
    let end = JumpTuple { before: VSet::range(0, n - 4), block: VSet::range(n - 3, n - 2), seq: vec![(n - 3) as u8, (n - 2) as u8] };
    let s = jumps.iter().position(|j| *j == start)?;
    let e = jumps.iter().position(|j| *j == end)?;
    let mut l1 = LayerOne { aug, jumps, sections, tau, two: use_layer_two, memo: HashMap::new(), stats };
    let c = l1.value(s, e)?;
    let mut map = c.map.to_vec();
    map[n - 1] = n as u8;
    let all = aug.all();
    make_candidate(aug, map.into_boxed_slice(), all, VSet::range(1, n), &[])
}

/// Sets derived from a pair of chains.
struct PairInfo {
    domain: VSet,
    codomain: VSet,
    cliques: Vec<(usize, usize)>,
    fixed: Placement,
}

struct LayerTwo<'a> {
    aug: &'a AugmentedInstance,
    frame: &'a ChainFrame,
    chains: Vec<Chain>,
    index: HashMap<Chain, usize>,
    by_start: BTreeMap<u8, Vec<usize>>,
    memo: HashMap<(u32, u32), Option<Candidate>>,
    stats: &'a mut DpStats,
}

impl LayerTwo<'_> {
    fn info(&self, c1: usize, c2: usize) -> Option<PairInfo> {
        let (i1, i2) = (&self.chains[c1], &self.chains[c2]);
        let (s1, s2) = (i1.s(), i2.s());
        if s1 < s2 || s1 > s2 + 1 {
            return None;
        }
        for i in 0..=s2 {
            if i1.z[i] > i2.z[i] || !i1.b[i].is_subset(i2.b[i]) {
                return None;
            }
        }
        for i in 0..s1 {
            if i2.z[i] > i1.z[i + 1] || !i2.b[i].is_subset(i1.b[i + 1]) {
                return None;
            }
        }
        for i in 0..=s1 {
            for j in 0..=s2 {
                if (i1.u[i] == i2.u[j]) != (i1.z[i] == i2.z[j]) {
                    return None;
                }
            }
        }
        let f = self.frame;
        let mut parts: Vec<(VSet, usize, usize)> = (0..=s2).map(|i| (i2.b[i].minus(i1.b[i]), i1.z[i] as usize, i2.z[i] as usize)).collect();
        if s2 < s1 {
            parts.push((f.u2.minus(i1.b[s1]), i1.z[s1] as usize, f.r2));
        }
        let n = self.aug.n();
        let mut fixed = vec![0u8; n];
        let mut domain = VSet::EMPTY;
        let mut codomain = VSet::EMPTY;
        let mut cliques = vec![(f.p2, f.r2 - 1)];
        for (i, &(c, lo, hi)) in parts.iter().enumerate() {
            if c.len() != hi.saturating_sub(lo) || domain.intersects(c) {
                return None;
            }
            if lo < hi {
                if !self.aug.up_clique(lo, hi - 1) || !c.contains(i1.u[i] as usize) {
                    return None;
                }
                fixed[i1.u[i] as usize] = lo as u8;
                cliques.push((lo, hi - 1));
            }
            domain = domain.union(c);
            codomain = codomain.union(VSet::range(lo, hi - 1));
        }
        for (p, seq) in [(f.p1, &f.x1), (f.p2, &f.x2)] {
            for (k, &v) in seq.iter().enumerate() {
                let v = v as usize;
                if domain.contains(v) {
                    if fixed[v] != 0 && fixed[v] as usize != p + k {
                        return None;
                    }
                    fixed[v] = (p + k) as u8;
                }
            }
        }
        Some(PairInfo { domain, codomain, cliques, fixed: fixed.into_boxed_slice() })
    }

    fn finish(&self, info: &PairInfo, m: Placement) -> Option<Candidate> {
        let m = merge(&m, &info.fixed)?;
        make_candidate(self.aug, m, info.domain, info.codomain, &info.cliques)
    }

    fn value(&mut self, c1: usize, c2: usize) -> Option<Candidate> {
        if let Some(v) = self.memo.get(&(c1 as u32, c2 as u32)) {
            return v.clone();
        }
        self.stats.dp_states += 1;
        let best = self.compute(c1, c2);
        self.memo.insert((c1 as u32, c2 as u32), best.clone());
        best
    }

    fn compute(&mut self, c1: usize, c2: usize) -> Option<Candidate> {
        let info = self.info(c1, c2)?;
        let (z1, z2) = (self.chains[c1].z[0] as usize, self.chains[c2].z[0] as usize);
        if z1 == z2 || z1 + 1 >= self.frame.p2 {
            return self.finish(&info, info.fixed.clone());
        }
        let mut best = None;
        if z2 > z1 + 1 {
            let mids: Vec<usize> =
                self.by_start.range((z1 + 1) as u8..z2 as u8).flat_map(|(_, v)| v.iter().copied()).collect();
            for c3 in mids {
                let Some(l) = self.value(c1, c3) else { continue };
                let Some(r) = self.value(c3, c2) else { continue };
                if let Some(c) = merge(&l.map, &r.map).and_then(|m| self.finish(&info, m)) {
                    keep_better(&mut best, c);
                }
            }
        } else {
            let t1 = self.index.get(&self.chains[c1].tail()).copied();
            let t2 = self.index.get(&self.chains[c2].tail()).copied();
            if let (Some(t1), Some(t2)) = (t1, t2) {
                if let Some(v) = self.value(t1, t2) {
                    let mut m = v.map.to_vec();
                    let u = self.chains[c1].u[0] as usize;
                    if m[u] == 0 {
                        m[u] = z1 as u8;
                        if let Some(c) = self.finish(&info, m.into_boxed_slice()) {
                            keep_better(&mut best, c);
                        }
                    }
                }
            }
        }
        best
    }
}

/// Values of all chain pairs that start at the first tuple and cover exactly
/// the positions between the two tuples.
pub fn layer_two_dp(aug: &AugmentedInstance, sections: &BTreeSet<VSet>, frame: &ChainFrame, stats: &mut DpStats) -> Vec<Placement> {
    let chains = enumerate_chains(aug, sections, frame);
    stats.chains += chains.len() as u64;
    let index: HashMap<Chain, usize> = chains.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut by_start: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
    for (i, c) in chains.iter().enumerate() {
        by_start.entry(c.z[0]).or_default().push(i);
    }
    let target = frame.u2.minus(frame.a1);
    let tops: Vec<usize> =
        by_start.get(&(frame.p1 as u8)).map(|v| v.iter().copied().filter(|&i| chains[i].b[0] == frame.a1).collect()).unwrap_or_default();
    let mut l2 = LayerTwo { aug, frame, chains, index, by_start, memo: HashMap::new(), stats };
    let mut out = Vec::new();
    for c1 in tops {
        for c2 in 0..l2.chains.len() {
            match l2.info(c1, c2) {
                Some(info) if info.domain == target => {}
                _ => continue,
            }
            if let Some(v) = l2.value(c1, c2) {
                out.push(v.map);
            }
        }
    }
    out
}
