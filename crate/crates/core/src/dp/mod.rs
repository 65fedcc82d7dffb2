//! Dynamic programming over jump tuples and chains on the augmented instance.

mod chains;
mod jump;
mod layers;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::spic::SpicInstance;
use crate::vset::VSet;

pub use chains::{enumerate_chains, Chain, ChainFrame};
pub use jump::{deduce_block_ordering, enumerate_jump_family, jump, jump_set, JumpTuple};
pub use layers::{layer_one_dp, layer_two_dp, DpStats, LayerOneState};

/// Largest original instance the engine accepts (positions must fit a `u128`).
pub const MAX_VERTICES: usize = 120;

/// The instance with two vertices added in front and three at the end.
///
/// Vertex ids: `α2 = 0`, `α1 = 1`, original `v` is `v + 2`, `ω1, ω2, ω3` are
/// `n + 2 ..= n + 4`. Positions are shifted by two in the same way, so the
/// original position `p` is `p + 2` and the total is `n + 5`.
#[derive(Debug, Clone)]
pub struct AugmentedInstance {
    pub base_n: usize,
    pub alpha: usize,
    pub omega: usize,
    pub budget: usize,
    pub adj: Vec<VSet>,
    /// Allowed positions per vertex.
    pub allowed: Vec<VSet>,
    /// Upper and lower sandwich rows, indexed by position.
    pub up: Vec<VSet>,
    pub down: Vec<VSet>,
}

pub const OFFSET: usize = 2;

impl AugmentedInstance {
    pub fn n(&self) -> usize {
        self.base_n + 5
    }

    pub fn is_added(&self, v: usize) -> bool {
        v < OFFSET || v >= self.base_n + OFFSET
    }

    /// Original vertices as augmented ids.
    pub fn original(&self) -> VSet {
        VSet::range(OFFSET, self.base_n + OFFSET - 1)
    }

    pub fn all(&self) -> VSet {
        VSet::range(0, self.n() - 1)
    }

    pub fn omegas(&self) -> VSet {
        VSet::range(self.base_n + 2, self.base_n + 4)
    }

    #[inline]
    pub fn up_has(&self, p: usize, q: usize) -> bool {
        p == q || self.up[p].contains(q)
    }

    #[inline]
    pub fn down_has(&self, p: usize, q: usize) -> bool {
        self.down[p].contains(q)
    }

    /// True when positions `lo..=hi` are pairwise adjacent in the upper graph.
    #[inline]
    pub fn up_clique(&self, lo: usize, hi: usize) -> bool {
        hi <= lo || self.up_has(lo, hi)
    }

    /// Lifts original sections to augmented ones, adding the prefixes made of
    /// added vertices.
    pub fn sections(&self, base: &BTreeSet<VSet>) -> BTreeSet<VSet> {
        let n = self.base_n;
        let mut out = BTreeSet::new();
        out.insert(VSet::EMPTY);
        out.insert(VSet::single(0));
        let front = VSet::range(0, 1);
        for s in base {
            out.insert(VSet(s.0 << OFFSET).union(front));
        }
        let body = VSet::range(0, n + 1);
        out.insert(body.with(n + 2));
        out.insert(body.with(n + 2).with(n + 3));
        out.insert(self.all());
        out
    }
}

/// Adds `α2, α1` in front of `alpha` and `ω1, ω2, ω3` after `omega`.
pub fn augment(inst: &SpicInstance, alpha: usize, omega: usize) -> AugmentedInstance {
    let n = inst.n();
    assert!(n <= MAX_VERTICES, "instance too large for the dynamic program");
    assert!(alpha < n && omega < n && (alpha != omega || n == 1));
    let total = n + 5;
    let g = inst.graph();
    let mut adj = vec![VSet::EMPTY; total];
    let add = |adj: &mut Vec<VSet>, u: usize, v: usize| {
        adj[u] = adj[u].with(v);
        adj[v] = adj[v].with(u);
    };
    for (u, v) in g.edges() {
        add(&mut adj, u + OFFSET, v + OFFSET);
    }
    let (a2, a1, w1, w2, w3) = (0, 1, n + 2, n + 3, n + 4);
    add(&mut adj, a1, a2);
    add(&mut adj, alpha + OFFSET, a1);
    add(&mut adj, w2, w3);
    add(&mut adj, w1, w2);
    add(&mut adj, omega + OFFSET, w1);

    let mut allowed = vec![VSet::EMPTY; total];
    for v in 0..n {
        allowed[v + OFFSET] = VSet(inst.allowed(v).iter().fold(0u128, |s, p| s | 1u128 << (p + OFFSET)));
    }
    allowed[alpha + OFFSET] = allowed[alpha + OFFSET].inter(VSet::single(1 + OFFSET));
    allowed[omega + OFFSET] = allowed[omega + OFFSET].inter(VSet::single(n + OFFSET));
    allowed[a2] = VSet::single(1);
    allowed[a1] = VSet::single(2);
    allowed[w1] = VSet::single(n + 3);
    allowed[w2] = VSet::single(n + 4);
    allowed[w3] = VSet::single(n + 5);

    let mut up = vec![VSet::EMPTY; total + 1];
    let mut down = vec![VSet::EMPTY; total + 1];
    let link = |rows: &mut Vec<VSet>, p: usize, q: usize| {
        rows[p] = rows[p].with(q);
        rows[q] = rows[q].with(p);
    };
    for (p, q) in inst.g_up().edges() {
        link(&mut up, p + 1 + OFFSET, q + 1 + OFFSET);
    }
    for (p, q) in inst.g_down().edges() {
        link(&mut down, p + 1 + OFFSET, q + 1 + OFFSET);
    }
    for (p, q) in [(1, 2), (2, 3), (n + 2, n + 3), (n + 3, n + 4), (n + 4, n + 5)] {
        link(&mut up, p, q);
    }
    AugmentedInstance { base_n: n, alpha, omega, budget: inst.budget(), adj, allowed, up, down }
}

/// A partial ordering stored as one position per augmented vertex (0 = unplaced).
pub type Placement = Box<[u8]>;

/// A validated DP value together with its completion size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub cost: usize,
    pub map: Placement,
}

/// The one comparator used everywhere: completion size, then the associated sequence.
pub fn candidate_cmp(a: &Candidate, b: &Candidate) -> Ordering {
    a.cost.cmp(&b.cost).then_with(|| a.map.cmp(&b.map))
}

pub(crate) fn keep_better(best: &mut Option<Candidate>, c: Candidate) {
    match best {
        Some(b) if candidate_cmp(&c, b) != Ordering::Less => {}
        _ => *best = Some(c),
    }
}

/// Merges two placements that must agree where both are defined.
pub(crate) fn merge(a: &[u8], b: &[u8]) -> Option<Placement> {
    let mut out = a.to_vec();
    for (i, &p) in b.iter().enumerate() {
        if p != 0 {
            if out[i] != 0 && out[i] != p {
                return None;
            }
            out[i] = p;
        }
    }
    Some(out.into_boxed_slice())
}

/// Checks that `map` is a feasible bijection from `domain` onto `codomain`.
pub(crate) fn is_valid(aug: &AugmentedInstance, map: &[u8], domain: VSet, codomain: VSet) -> bool {
    if domain.len() != codomain.len() {
        return false;
    }
    let mut used = VSet::EMPTY;
    for (v, &p) in map.iter().enumerate() {
        let p = p as usize;
        if !domain.contains(v) {
            if p != 0 {
                return false;
            }
            continue;
        }
        if p == 0 || !codomain.contains(p) || used.contains(p) || !aug.allowed[v].contains(p) {
            return false;
        }
        used = used.with(p);
    }
    for v in domain.iter() {
        for w in aug.adj[v].inter(domain).iter() {
            if w > v && !aug.up_has(map[v] as usize, map[w] as usize) {
                return false;
            }
        }
    }
    true
}

/// Size of the minimal completion of `map` restricted to `domain`; pairs whose
/// positions share one of `cliques` are forced in addition to the lower bound.
pub(crate) fn completion_size(aug: &AugmentedInstance, map: &[u8], domain: VSet, cliques: &[(usize, usize)]) -> usize {
    let mut seq: Vec<(usize, usize)> = domain.iter().map(|v| (map[v] as usize, v)).collect();
    seq.sort_unstable();
    let len = seq.len();
    let mut idx = [0u8; 128];
    for (i, &(_, v)) in seq.iter().enumerate() {
        idx[v] = i as u8;
    }
    let mut reach = 0usize;
    let mut count = 0;
    for i in 0..len {
        let (pi, x) = seq[i];
        for w in aug.adj[x].inter(domain).iter() {
            reach = reach.max(idx[w] as usize);
        }
        for (j, &(pj, y)) in seq.iter().enumerate().skip(i + 1) {
            if aug.adj[x].contains(y) {
                continue;
            }
            if j <= reach || aug.down_has(pi, pj) || cliques.iter().any(|&(lo, hi)| lo <= pi && pj <= hi) {
                count += 1;
            }
        }
    }
    count
}

/// Validates `map` and wraps it with its cost when within budget.
pub(crate) fn make_candidate(
    aug: &AugmentedInstance,
    map: Placement,
    domain: VSet,
    codomain: VSet,
    cliques: &[(usize, usize)],
) -> Option<Candidate> {
    if !is_valid(aug, &map, domain, codomain) {
        return None;
    }
    let cost = completion_size(aug, &map, domain, cliques);
    (cost <= aug.budget).then_some(Candidate { cost, map })
}
