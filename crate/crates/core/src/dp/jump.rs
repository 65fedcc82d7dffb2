use std::collections::BTreeSet;

use super::{AugmentedInstance, Placement};
use crate::graph::{Graph, VertexOrdering};
use crate::spic::lex_min_matching;
use crate::vset::{for_each_small_subset, VSet};

/// First position after `p` whose vertex is not adjacent to the vertex at `p`,
/// or `None` when every later vertex is adjacent.
pub fn jump(g: &Graph, ord: &VertexOrdering, p: usize) -> Option<usize> {
    let seq = ord.sequence();
    let x = seq[p - 1];
    (p + 1..=seq.len()).find(|&q| !g.has_edge(x, seq[q - 1]))
}

/// Vertices at positions `p .. jump(p)`.
pub fn jump_set(g: &Graph, ord: &VertexOrdering, p: usize) -> Vec<usize> {
    let seq = ord.sequence();
    let end = jump(g, ord, p).unwrap_or(seq.len() + 1);
    seq[p - 1..end - 1].to_vec()
}

/// A prefix set, the block that follows it and the order of that block.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JumpTuple {
    pub before: VSet,
    pub block: VSet,
    /// Block vertices in position order, starting at `before.len() + 1`.
    pub seq: Vec<u8>,
}

impl JumpTuple {
    pub fn p(&self) -> usize {
        self.before.len() + 1
    }

    /// Position right after the block.
    pub fn r(&self) -> usize {
        self.before.len() + self.block.len() + 1
    }

    pub fn upto(&self) -> VSet {
        self.before.union(self.block)
    }

    pub fn position_of(&self, v: usize) -> Option<usize> {
        self.seq.iter().position(|&x| x as usize == v).map(|i| self.p() + i)
    }

    pub fn placement(&self, n: usize) -> Placement {
        let mut m = vec![0u8; n];
        let p = self.p();
        for (i, &v) in self.seq.iter().enumerate() {
            m[v as usize] = (p + i) as u8;
        }
        m.into_boxed_slice()
    }
}

/// Orders a block from the left and right neighbourhood of each vertex: earlier
/// vertices see more of the prefix and less of the suffix. Vertices with equal
/// profiles are placed by a lex-min matching against the allowed positions.
fn order_from_profiles(aug: &AugmentedInstance, start: usize, profiles: &mut [(usize, VSet, VSet)]) -> Option<Vec<u8>> {
    profiles.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then(a.2.len().cmp(&b.2.len())).then(a.0.cmp(&b.0)));
    for w in profiles.windows(2) {
        if !(w[1].1.is_subset(w[0].1) && w[0].2.is_subset(w[1].2)) {
            return None;
        }
    }
    if !profiles[0].2.is_empty() {
        return None;
    }
    let mut seq = Vec::with_capacity(profiles.len());
    let mut i = 0;
    while i < profiles.len() {
        let mut j = i;
        while j < profiles.len() && profiles[j].1 == profiles[i].1 && profiles[j].2 == profiles[i].2 {
            j += 1;
        }
        let mut level: Vec<usize> = profiles[i..j].iter().map(|x| x.0).collect();
        level.sort_unstable();
        let base = start + i;
        let f = lex_min_matching(level.len(), |a, b| aug.allowed[level[a]].contains(base + b))?;
        let mut placed = vec![0u8; level.len()];
        for (a, &b) in f.iter().enumerate() {
            placed[b] = level[a] as u8;
        }
        seq.extend(placed);
        i = j;
    }
    Some(seq)
}

/// Block order implied by the prefix `before`, the block and the completion
/// edges incident to the block; `None` when the neighbourhoods are not nested.
pub fn deduce_block_ordering(
    aug: &AugmentedInstance,
    before: VSet,
    block: VSet,
    inc_edges: &[(usize, usize)],
) -> Option<Vec<u8>> {
    let rest = aug.all().minus(before.union(block));
    let mut nb: Vec<VSet> = aug.adj.clone();
    for &(u, v) in inc_edges {
        nb[u] = nb[u].with(v);
        nb[v] = nb[v].with(u);
    }
    let mut profiles: Vec<(usize, VSet, VSet)> = block.iter().map(|u| (u, nb[u].inter(before), nb[u].inter(rest))).collect();
    if profiles.is_empty() {
        return None;
    }
    order_from_profiles(aug, before.len() + 1, &mut profiles)
}

fn comparable(a: &(usize, VSet, VSet), b: &(usize, VSet, VSet)) -> bool {
    (b.1.is_subset(a.1) && a.2.is_subset(b.2)) || (a.1.is_subset(b.1) && b.2.is_subset(a.2))
}

/// Tuples for every pair of nested sections whose difference can be a jump set
/// with at most `light` incident completion edges, at most `tau` per vertex.
pub fn enumerate_jump_family(
    aug: &AugmentedInstance,
    sections: &BTreeSet<VSet>,
    tau: usize,
    light: usize,
) -> BTreeSet<JumpTuple> {
    let all = aug.all();
    let orig = aug.original();
    let secs: Vec<VSet> = sections.iter().copied().collect();
    let mut out = BTreeSet::new();
    for &a in &secs {
        // a G-edge leaving `a` must stay inside the next section
        let reach = a.iter().fold(a, |s, v| s.union(aug.adj[v]));
        for &a2 in &secs {
            if a2.len() <= a.len() || !a.is_subset(a2) || !reach.is_subset(a2) {
                continue;
            }
            let x = a2.minus(a);
            let (p, last) = (a.len() + 1, a2.len());
            if !aug.up_clique(p, last) {
                continue;
            }
            let xs = x.to_vec();
            let mut inner = vec![0usize; xs.len()];
            let mut inner_total = 0;
            let mut bad = false;
            for (i, &u) in xs.iter().enumerate() {
                let miss = x.minus(aug.adj[u]).without(u);
                if !miss.is_empty() && aug.is_added(u) {
                    bad = true;
                }
                inner[i] = miss.len();
                inner_total += miss.len();
            }
            inner_total /= 2;
            if bad || inner_total > light || inner.iter().any(|&c| c > tau) {
                continue;
            }
            let rest = all.minus(a2);
            let mut profiles = Vec::with_capacity(xs.len());
            let mut ctx = Rec { aug, a, rest, orig, xs: &xs, inner: &inner, tau, out: &mut out };
            ctx.run(0, light - inner_total, &mut profiles);
        }
    }
    out
}

struct Rec<'a> {
    aug: &'a AugmentedInstance,
    a: VSet,
    rest: VSet,
    orig: VSet,
    xs: &'a [usize],
    inner: &'a [usize],
    tau: usize,
    out: &'a mut BTreeSet<JumpTuple>,
}

impl Rec<'_> {
    fn run(&mut self, i: usize, left_budget: usize, profiles: &mut Vec<(usize, VSet, VSet)>) {
        if i == self.xs.len() {
            let mut pr = profiles.clone();
            if let Some(seq) = order_from_profiles(self.aug, self.a.len() + 1, &mut pr) {
                let block = self.xs.iter().copied().collect();
                self.out.insert(JumpTuple { before: self.a, block, seq });
            }
            return;
        }
        let u = self.xs[i];
        let l0 = self.aug.adj[u].inter(self.a);
        let r0 = self.aug.adj[u].inter(self.rest);
        let cap = if self.aug.is_added(u) { 0 } else { left_budget.min(self.tau - self.inner[i]) };
        let pool: Vec<usize> = if cap == 0 {
            Vec::new()
        } else {
            self.a.union(self.rest).inter(self.orig).minus(self.aug.adj[u]).to_vec()
        };
        let mut choices = Vec::new();
        for_each_small_subset(&pool, cap, &mut |s| choices.push(s.to_vec()));
        for extra in choices {
            let add: VSet = extra.iter().copied().collect();
            let prof = (u, l0.union(add.inter(self.a)), r0.union(add.inter(self.rest)));
            if profiles.iter().all(|q| comparable(q, &prof)) {
                profiles.push(prof);
                self.run(i + 1, left_budget - extra.len(), profiles);
                profiles.pop();
            }
        }
    }
}
