//! Twin-class triples and the family of candidate sections (prefix sets) of a
//! sandwich instance.

use std::collections::{BTreeMap, BTreeSet};

use crate::expensive::{BranchInstance, Refused, Stage};
use crate::graph::{Graph, VertexOrdering};
use crate::spic::{lex_min_matching, SpicInstance};
use crate::vset::{for_each_small_subset, VSet};

/// What the enumeration needs to know about the removed expensive vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchContext {
    /// Position in the original graph of each free position (`pos_map[i - 1]`).
    pub pos_map: Vec<usize>,
    /// For each vertex of H, the original positions of its expensive neighbours.
    pub anchors: Vec<Vec<usize>>,
}

impl BranchContext {
    pub fn plain(n: usize) -> Self {
        BranchContext { pos_map: (1..=n).collect(), anchors: vec![Vec::new(); n] }
    }

    pub fn from_branch(b: &BranchInstance, g: &Graph) -> Self {
        let anchors = (0..b.w.len()).map(|u| b.anchor_positions(g, u)).collect();
        BranchContext { pos_map: b.pos_map.clone(), anchors }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwinTriple {
    pub left: VSet,
    pub class: VSet,
    /// Class vertices in position order; the first sits at `left.len() + 1`.
    pub class_seq: Vec<usize>,
}

impl TwinTriple {
    pub fn start(&self) -> usize {
        self.left.len() + 1
    }

    pub fn class_ordering(&self, n: usize) -> VertexOrdering {
        let s = self.start();
        VertexOrdering::from_pairs(n, self.class_seq.iter().enumerate().map(|(j, &v)| (v, s + j))).expect("distinct")
    }
}

/// Five guessed vertices with their guessed incident completion edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiveGuess {
    pub a: usize,
    pub b1: Option<usize>,
    pub b2: Option<usize>,
    pub c1: usize,
    pub c2: usize,
    pub inc_edges: Vec<(usize, Vec<usize>)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub before: VSet,
    pub inside: VSet,
    pub after: VSet,
}

pub(crate) fn closed_nbhd(h: &Graph, v: usize) -> VSet {
    h.neighbors(v).iter().copied().collect::<VSet>().with(v)
}

impl FiveGuess {
    fn completed_nbhd(&self, h: &Graph, v: usize) -> VSet {
        let mut s = closed_nbhd(h, v);
        for (x, ys) in &self.inc_edges {
            if *x == v {
                s = s.union(ys.iter().copied().collect());
            } else if ys.contains(&v) {
                s = s.with(*x);
            }
        }
        s
    }
}

/// Splits `m` into before/inside/after from the restricted neighbourhoods of
/// b1, b2, c1, c2; `None` when a vertex is sent both ways.
pub fn classify_sets(m: VSet, rb1: VSet, rb2: VSet, rc1: VSet, rc2: VSet) -> Option<Classification> {
    let before = rb1.union(m.minus(rc2)).inter(m);
    let after = rb2.union(m.minus(rc1)).inter(m);
    if before.intersects(after) {
        return None;
    }
    Some(Classification { before, inside: m.minus(before.union(after)), after })
}

pub fn classify_neighbors(guess: &FiveGuess, h: &Graph) -> Option<Classification> {
    let m = guess.completed_nbhd(h, guess.a);
    let r = |x: Option<usize>| x.map_or(VSet::EMPTY, |x| guess.completed_nbhd(h, x).inter(m));
    classify_sets(m, r(guess.b1), r(guess.b2), r(Some(guess.c1)), r(Some(guess.c2)))
}

/// Places every component of `H - m` before or after the class using its
/// neighbours in `m` or among the expensive vertices; returns the left set.
pub fn resolve_component_sides(
    h: &Graph,
    ctx: &BranchContext,
    cls: &Classification,
    start: usize,
) -> Option<VSet> {
    let n = h.n();
    let m = cls.before.union(cls.inside).union(cls.after);
    let len = cls.inside.len();
    let (lo, hi) = (ctx.pos_map[start - 1], ctx.pos_map[start + len - 2]);
    let mut left = cls.before;
    let mut seen = m;
    for s in 0..n {
        if seen.contains(s) {
            continue;
        }
        let mut comp = VSet::single(s);
        let mut stack = vec![s];
        seen = seen.with(s);
        let mut side: Option<bool> = None;
        let set_side = |b: bool, side: &mut Option<bool>| -> bool {
            match side {
                Some(x) if *x != b => false,
                _ => {
                    *side = Some(b);
                    true
                }
            }
        };
        while let Some(v) = stack.pop() {
            for &w in h.neighbors(v) {
                if m.contains(w) {
                    if cls.inside.contains(w) || !set_side(cls.before.contains(w), &mut side) {
                        return None;
                    }
                } else if !seen.contains(w) {
                    seen = seen.with(w);
                    comp = comp.with(w);
                    stack.push(w);
                }
            }
            for &p in &ctx.anchors[v] {
                let before = if p < lo {
                    true
                } else if p > hi {
                    false
                } else {
                    return None;
                };
                if !set_side(before, &mut side) {
                    return None;
                }
            }
        }
        match side {
            Some(true) => left = left.union(comp),
            Some(false) => {}
            None => return None,
        }
    }
    (left.len() == start - 1).then_some(left)
}

/// Lex-min placement of `class` onto `start..start + |class|` within the allowed positions.
pub fn class_ordering_for(class: VSet, start: usize, inst: &SpicInstance) -> Option<Vec<usize>> {
    let vs = class.to_vec();
    let f = lex_min_matching(vs.len(), |i, j| inst.is_allowed(vs[i], start + j))?;
    let mut seq = vec![0; vs.len()];
    for (i, &j) in f.iter().enumerate() {
        seq[j] = vs[i];
    }
    Some(seq)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SectionStats {
    pub guesses: u64,
    pub triples: usize,
    pub sections: usize,
}

/// Restricted neighbourhoods `N[x] ∩ m` a vertex can have once at most
/// `extra` completion edges towards `m \ forbid` are added.
fn restricted_options(base: VSet, m: VSet, forbid: VSet, extra: usize, out: &mut BTreeSet<VSet>) {
    let pool = m.minus(base).minus(forbid).to_vec();
    for_each_small_subset(&pool, extra, &mut |sub| {
        out.insert(sub.iter().fold(base, |s, &x| s.with(x)));
    });
}

pub fn enumerate_twin_triples(
    inst: &SpicInstance,
    ctx: &BranchContext,
    tau: usize,
    ceiling: usize,
    stats: &mut SectionStats,
) -> Result<BTreeSet<TwinTriple>, Refused> {
    let h = inst.graph();
    let n = h.n();
    let budget = inst.budget();
    let cap = tau.min(budget);
    let full = VSet::range(0, n.saturating_sub(1));
    let nbhd: Vec<VSet> = (0..n).map(|v| closed_nbhd(h, v)).collect();
    let mut shapes: BTreeSet<(VSet, VSet, VSet)> = BTreeSet::new();
    let mut work: u64 = 0;
    for a in 0..n {
        let non_adj = full.minus(nbhd[a]).to_vec();
        let mut fa_sets = Vec::new();
        for_each_small_subset(&non_adj, cap, &mut |s| fa_sets.push(s.to_vec()));
        for fa in fa_sets {
            let m = fa.iter().fold(nbhd[a], |s, &x| s.with(x));
            let extra = cap.min(budget - fa.len());
            let mut rb = BTreeSet::new();
            rb.insert(VSet::EMPTY);
            for b in full.minus(m).iter() {
                restricted_options(nbhd[b].inter(m), m, VSet::single(a), extra, &mut rb);
            }
            let mut rc = BTreeSet::new();
            for c in m.iter() {
                let base = nbhd[c].inter(m).with(a);
                if c == a {
                    rc.insert(m);
                } else {
                    restricted_options(base, m, VSet::EMPTY, extra, &mut rc);
                }
            }
            let mut sides = BTreeSet::new();
            for &x in &rb {
                for &y in &rc {
                    let s = x.union(m.minus(y));
                    if !s.contains(a) {
                        sides.insert(s);
                    }
                }
            }
            work += (rb.len() * rc.len()) as u64;
            let sides: Vec<VSet> = sides.into_iter().collect();
            for &p in &sides {
                for &q in &sides {
                    work += 1;
                    if p.intersects(q) {
                        continue;
                    }
                    let inside = m.minus(p.union(q));
                    if inside.iter().all(|u| nbhd[u].is_subset(m) && m.minus(nbhd[u]).len() <= cap) {
                        shapes.insert((p, inside, q));
                    }
                }
            }
            if work > (ceiling as u64).saturating_mul(64) {
                return Err(Refused { stage: Stage::SectionWork, count: work as usize, limit: ceiling.saturating_mul(64) });
            }
        }
    }
    stats.guesses += work;
    let mut out = BTreeSet::new();
    for (before, inside, after) in shapes {
        let cls = Classification { before, inside, after };
        let len = inside.len();
        for start in before.len() + 1..=n + 1 - len {
            if n - (start - 1) - len < after.len() {
                break;
            }
            let Some(left) = resolve_component_sides(h, ctx, &cls, start) else { continue };
            let Some(class_seq) = class_ordering_for(inside, start, inst) else { continue };
            out.insert(TwinTriple { left, class: inside, class_seq });
            if out.len() > ceiling {
                return Err(Refused { stage: Stage::Triples, count: out.len(), limit: ceiling });
            }
        }
    }
    stats.triples += out.len();
    Ok(out)
}

/// Every prefix `L ∪ {first j class vertices}` of every triple, plus `V(H)`.
pub fn enumerate_sections(n: usize, triples: &BTreeSet<TwinTriple>) -> BTreeSet<VSet> {
    let mut out = BTreeSet::new();
    out.insert(VSet::range(0, n.saturating_sub(1)));
    for t in triples {
        let mut a = t.left;
        out.insert(a);
        for &v in &t.class_seq {
            a = a.with(v);
            out.insert(a);
        }
    }
    out
}

/// Sections grouped by size.
pub fn by_size(sections: &BTreeSet<VSet>) -> BTreeMap<usize, Vec<VSet>> {
    let mut m: BTreeMap<usize, Vec<VSet>> = BTreeMap::new();
    for &s in sections {
        m.entry(s.len()).or_default().push(s);
    }
    m
}
