//! Reference solvers: exhaustive search over orderings and a bounded search
//! tree over forbidden induced subgraphs.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Completion, Graph, GraphError, TieBreaker, VertexOrdering};
use crate::recognition::{canonical_umbrella_ordering, find_forbidden_structure, is_proper_interval, ForbiddenKind};
use crate::spic::{completion_pairs, SpicInstance};

pub const DEFAULT_BRUTEFORCE_LIMIT: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, brute force is limited to {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Yes,
    No,
}

/// Work counters; solvers fill the ones that apply to them.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub search_nodes: u64,
    pub branches_enumerated: u64,
    pub sections: u64,
    pub jump_tuples: u64,
    pub chains: u64,
    pub dp_states: u64,
}

impl SolveStats {
    pub fn add(&mut self, o: &SolveStats) {
        self.search_nodes += o.search_nodes;
        self.branches_enumerated += o.branches_enumerated;
        self.sections += o.sections;
        self.jump_tuples += o.jump_tuples;
        self.chains += o.chains;
        self.dp_states += o.dp_states;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: Status,
    pub cost: Option<usize>,
    pub completion: Option<Completion>,
    pub ordering: Option<VertexOrdering>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn no(stats: SolveStats) -> Self {
        SolveResult { status: Status::No, cost: None, completion: None, ordering: None, stats }
    }

    pub fn yes(completion: Completion, ordering: VertexOrdering, stats: SolveStats) -> Self {
        SolveResult { status: Status::Yes, cost: Some(completion.len()), completion: Some(completion), ordering: Some(ordering), stats }
    }
}

pub fn solve_bruteforce(inst: &SpicInstance, tb: &TieBreaker) -> Result<SolveResult, OracleError> {
    solve_bruteforce_with_limit(inst, tb, DEFAULT_BRUTEFORCE_LIMIT)
}

struct Search<'a> {
    inst: &'a SpicInstance,
    order: &'a [usize],
    pos: Vec<usize>,
    used: Vec<bool>,
    bound: usize,
    best: Option<Vec<usize>>,
    nodes: u64,
}

impl Search<'_> {
    fn partial(&self) -> VertexOrdering {
        VertexOrdering::from_position_vec(self.pos.clone()).unwrap()
    }

    fn run(&mut self, depth: usize) {
        self.nodes += 1;
        let n = self.inst.n();
        if depth == n {
            let c = completion_pairs(self.inst, &self.partial()).len();
            if c <= self.bound {
                self.best = Some(self.pos.clone());
                // later orderings are lexicographically larger, so only strictly cheaper ones matter
                self.bound = match c.checked_sub(1) {
                    Some(b) => b,
                    None => {
                        self.bound = usize::MAX;
                        return;
                    }
                };
            }
            return;
        }
        let v = self.order[depth];
        for p in 1..=n {
            if self.bound == usize::MAX {
                return;
            }
            if self.used[p] || !self.inst.is_allowed(v, p) {
                continue;
            }
            if self.inst.graph().neighbors(v).iter().any(|&w| self.pos[w] != 0 && !self.inst.up_has(p, self.pos[w])) {
                continue;
            }
            self.pos[v] = p;
            self.used[p] = true;
            if completion_pairs(self.inst, &self.partial()).len() <= self.bound {
                self.run(depth + 1);
            }
            self.pos[v] = 0;
            self.used[p] = false;
        }
    }
}

/// Exhaustive search in lexicographic order of associated sequences, pruned by
/// the partial minimal completion (which only grows as vertices are placed).
pub fn solve_bruteforce_with_limit(
    inst: &SpicInstance,
    tb: &TieBreaker,
    limit: usize,
) -> Result<SolveResult, OracleError> {
    let n = inst.n();
    if n > limit {
        return Err(OracleError::TooLarge { n, limit });
    }
    let mut s = Search {
        inst,
        order: tb.order(),
        pos: vec![0; n],
        used: vec![false; n + 1],
        bound: inst.budget(),
        best: None,
        nodes: 0,
    };
    s.run(0);
    let stats = SolveStats { search_nodes: s.nodes, ..Default::default() };
    Ok(match s.best {
        None => SolveResult::no(stats),
        Some(pos) => {
            let ord = VertexOrdering::from_position_vec(pos)?;
            let f = Completion::from_set(completion_pairs(inst, &ord));
            SolveResult::yes(f, ord, stats)
        }
    })
}

const TRIANGULATE_MAX_HOLE: usize = 12;

fn triangulations(cycle: &[usize]) -> Vec<Vec<(usize, usize)>> {
    fn rec(c: &[usize], i: usize, j: usize) -> Vec<Vec<(usize, usize)>> {
        if j - i < 2 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for k in i + 1..j {
            let left = rec(c, i, k);
            let right = rec(c, k, j);
            for l in &left {
                for r in &right {
                    let mut t = l.clone();
                    t.extend(r);
                    if k > i + 1 {
                        t.push((c[i], c[k]));
                    }
                    if j > k + 1 {
                        t.push((c[k], c[j]));
                    }
                    out.push(t);
                }
            }
        }
        out
    }
    rec(cycle, 0, cycle.len() - 1)
}

struct Baseline<'a> {
    g: &'a Graph,
    limit: usize,
    seen: HashSet<Vec<(usize, usize)>>,
    leaves: Vec<BTreeSet<(usize, usize)>>,
    nodes: u64,
}

impl Baseline<'_> {
    fn run(&mut self, f: BTreeSet<(usize, usize)>) {
        if f.len() > self.limit || !self.seen.insert(f.iter().copied().collect()) {
            return;
        }
        self.nodes += 1;
        let h = self.g.with_completion(&Completion::from_set(f.clone()));
        let Some(w) = find_forbidden_structure(&h) else {
            self.leaves.push(f);
            return;
        };
        let left = self.limit - f.len();
        let vs = &w.vertices;
        if w.kind == ForbiddenKind::Hole && vs.len() <= TRIANGULATE_MAX_HOLE {
            if vs.len() - 3 > left {
                return;
            }
            for t in triangulations(vs) {
                let mut g2 = f.clone();
                g2.extend(t.into_iter().map(|(a, b)| (a.min(b), a.max(b))));
                self.run(g2);
            }
            return;
        }
        if w.kind == ForbiddenKind::Hole && vs.len() - 3 > left {
            return;
        }
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let (a, b) = (vs[i].min(vs[j]), vs[i].max(vs[j]));
                if !h.has_edge(a, b) {
                    let mut g2 = f.clone();
                    g2.insert((a, b));
                    self.run(g2);
                }
            }
        }
    }
}

/// Bounded search tree over forbidden structures with iterative deepening on the budget.
///
/// Among all minimum completions the one whose canonical umbrella ordering is
/// lexicographically smallest is returned.
pub fn solve_baseline(g: &Graph, k: usize, tb: &TieBreaker) -> SolveResult {
    let mut nodes = 0;
    for limit in 0..=k {
        let mut b = Baseline { g, limit, seen: HashSet::new(), leaves: Vec::new(), nodes: 0 };
        b.run(BTreeSet::new());
        nodes += b.nodes;
        let Some(opt) = b.leaves.iter().map(|f| f.len()).min() else {
            continue;
        };
        let mut best: Option<(Vec<usize>, Completion, VertexOrdering)> = None;
        let ranks_order = tb.order();
        for f in b.leaves.into_iter().filter(|f| f.len() == opt) {
            let comp = Completion::from_set(f);
            let h = g.with_completion(&comp);
            let ord = canonical_umbrella_ordering(&h, tb).expect("leaf is proper interval");
            let key: Vec<usize> = ranks_order.iter().map(|&v| ord.position(v).unwrap()).collect();
            if best.as_ref().is_none_or(|(bk, _, _)| key < *bk) {
                best = Some((key, comp, ord));
            }
        }
        let (_, comp, ord) = best.unwrap();
        // F^σ of the chosen ordering is a completion contained in `comp`; minimality makes them equal
        let stats = SolveStats { search_nodes: nodes, ..Default::default() };
        return SolveResult::yes(comp, ord, stats);
    }
    SolveResult::no(SolveStats { search_nodes: nodes, ..Default::default() })
}

/// True iff `pairs` has at most `k` elements and makes `g` proper interval.
pub fn verify_solution(g: &Graph, pairs: &[(usize, usize)], k: usize) -> Result<bool, OracleError> {
    let f = Completion::new(g, pairs.iter().copied())?;
    Ok(f.len() <= k && is_proper_interval(&g.with_completion(&f)))
}
