//! Sandwich proper interval completion instances: feasibility, the minimal
//! completion of an ordering, and lexicographically minimum matchings.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::graph::{has_umbrella_property, Completion, Graph, TieBreaker, VertexOrdering};
use crate::oracle::{self, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpicError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("ordering is not feasible: {0:?}")]
    Infeasible(FeasibilityReport),
}

/// A graph, a budget, allowed positions per vertex and sandwich bounds on positions.
///
/// `g_down` and `g_up` have one vertex per position: vertex `p - 1` is position `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpicInstance {
    graph: Graph,
    budget: usize,
    // bit p set = position p allowed (bit 0 unused)
    allowed: Vec<BitSet>,
    g_down: Graph,
    g_up: Graph,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub violating_vertex: Option<usize>,
    pub violating_pair: Option<(usize, usize)>,
}

impl SpicInstance {
    pub fn new(
        graph: Graph,
        budget: usize,
        allowed: Vec<BitSet>,
        g_down: Graph,
        g_up: Graph,
    ) -> Result<Self, SpicError> {
        let n = graph.n();
        let bad = |m: &str| Err(SpicError::InvalidInstance(m.to_string()));
        if allowed.len() != n || g_down.n() != n || g_up.n() != n {
            return bad("sizes of allowed sets and sandwich graphs must equal n");
        }
        if allowed.iter().any(|s| s.capacity() != n + 1 || s.contains(0)) {
            return bad("allowed sets must be subsets of 1..=n");
        }
        if g_down.edges().any(|(p, q)| !g_up.has_edge(p, q)) {
            return bad("lower sandwich graph is not contained in the upper one");
        }
        let id = VertexOrdering::from_sequence(&(0..n).collect::<Vec<_>>()).unwrap();
        if !has_umbrella_property(&g_down, &id) || !has_umbrella_property(&g_up, &id) {
            return bad("identity must be an umbrella ordering of both sandwich graphs");
        }
        Ok(SpicInstance { graph, budget, allowed, g_down, g_up })
    }

    /// Every position allowed, edgeless lower bound, complete upper bound.
    pub fn trivial(graph: Graph, budget: usize) -> Self {
        let n = graph.n();
        let mut all = BitSet::full(n + 1);
        all.remove(0);
        SpicInstance { allowed: vec![all; n], g_down: Graph::empty(n), g_up: Graph::complete(n), graph, budget }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn with_budget(&self, budget: usize) -> Self {
        SpicInstance { budget, ..self.clone() }
    }

    pub fn allowed(&self, v: usize) -> &BitSet {
        &self.allowed[v]
    }

    #[inline]
    pub fn is_allowed(&self, v: usize, p: usize) -> bool {
        self.allowed[v].contains(p)
    }

    pub fn g_down(&self) -> &Graph {
        &self.g_down
    }

    pub fn g_up(&self) -> &Graph {
        &self.g_up
    }

    /// Lower-bound adjacency between positions `p` and `q` (1-based).
    #[inline]
    pub fn down_has(&self, p: usize, q: usize) -> bool {
        self.g_down.has_edge(p - 1, q - 1)
    }

    #[inline]
    pub fn up_has(&self, p: usize, q: usize) -> bool {
        self.g_up.has_edge(p - 1, q - 1)
    }

    pub fn is_trivial_sandwich(&self) -> bool {
        let n = self.n();
        self.g_down.m() == 0 && self.g_up.m() == n * n.saturating_sub(1) / 2 && self.allowed.iter().all(|s| s.count() == n)
    }
}

pub fn is_feasible(inst: &SpicInstance, ord: &VertexOrdering) -> FeasibilityReport {
    let n = inst.n();
    let mut rep = FeasibilityReport::default();
    for (v, p) in ord.iter() {
        if v >= n || p > n || !inst.is_allowed(v, p) {
            rep.violating_vertex = Some(v);
            break;
        }
    }
    'outer: for (u, pu) in ord.iter() {
        if u >= n || pu > n {
            continue;
        }
        for &w in inst.graph.neighbors(u) {
            if w <= u {
                continue;
            }
            if let Some(pw) = ord.position(w) {
                if pw <= n && !inst.up_has(pu, pw) {
                    rep.violating_pair = Some((u, w));
                    break 'outer;
                }
            }
        }
    }
    rep.feasible = rep.violating_vertex.is_none() && rep.violating_pair.is_none();
    rep
}

/// F^σ without the feasibility check: non-edges inside `ord`'s domain that are
/// spanned by an edge of G[X] or whose positions are adjacent in `g_down`.
pub(crate) fn completion_pairs(inst: &SpicInstance, ord: &VertexOrdering) -> BTreeSet<(usize, usize)> {
    let g = &inst.graph;
    let seq = ord.sequence();
    let mut idx = vec![usize::MAX; g.n()];
    for (i, &v) in seq.iter().enumerate() {
        idx[v] = i;
    }
    let mut out = BTreeSet::new();
    let mut reach = 0usize;
    for i in 0..seq.len() {
        let x = seq[i];
        for &w in g.neighbors(x) {
            if idx[w] != usize::MAX && idx[w] > reach {
                reach = idx[w];
            }
        }
        let px = ord.position(x).unwrap();
        for (j, &y) in seq.iter().enumerate().skip(i + 1) {
            if g.has_edge(x, y) {
                continue;
            }
            if j <= reach || inst.down_has(px, ord.position(y).unwrap()) {
                out.insert((x.min(y), x.max(y)));
            }
        }
    }
    out
}

pub fn minimal_completion(inst: &SpicInstance, ord: &VertexOrdering) -> Result<Completion, SpicError> {
    let rep = is_feasible(inst, ord);
    if !rep.feasible {
        return Err(SpicError::Infeasible(rep));
    }
    Ok(Completion::from_set(completion_pairs(inst, ord)))
}

pub fn cost(inst: &SpicInstance, ord: &VertexOrdering) -> Result<usize, SpicError> {
    minimal_completion(inst, ord).map(|f| f.len())
}

/// The feasible ordering of minimum cost (lex-min among those), if its cost is within budget.
pub fn canonical_solution(inst: &SpicInstance, tb: &TieBreaker) -> Result<Option<VertexOrdering>, OracleError> {
    Ok(oracle::solve_bruteforce(inst, tb)?.ordering)
}

fn kuhn_augment(
    x: usize,
    adj: &[Vec<usize>],
    blocked: &[bool],
    seen: &mut [bool],
    match_y: &mut [usize],
) -> bool {
    for &y in &adj[x] {
        if blocked[y] || seen[y] {
            continue;
        }
        seen[y] = true;
        if match_y[y] == usize::MAX || kuhn_augment(match_y[y], adj, blocked, seen, match_y) {
            match_y[y] = x;
            return true;
        }
    }
    false
}

fn has_perfect_matching(xs: std::ops::Range<usize>, adj: &[Vec<usize>], blocked: &[bool]) -> bool {
    let s = blocked.len();
    let mut match_y = vec![usize::MAX; s];
    for x in xs {
        let mut seen = vec![false; s];
        if !kuhn_augment(x, adj, blocked, &mut seen, &mut match_y) {
            return false;
        }
    }
    true
}

/// Lexicographically minimum perfect matching of `x_0..x_{s-1}` into `y_0..y_{s-1}`.
///
/// Returns `f` with `x_i -> y_{f[i]}`, or `None` when no perfect matching exists.
pub fn lex_min_matching(s: usize, allowed: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    let adj: Vec<Vec<usize>> = (0..s).map(|i| (0..s).filter(|&j| allowed(i, j)).collect()).collect();
    let mut blocked = vec![false; s];
    if !has_perfect_matching(0..s, &adj, &blocked) {
        return None;
    }
    let mut out = Vec::with_capacity(s);
    for i in 0..s {
        let mut chosen = None;
        for &j in &adj[i] {
            if blocked[j] {
                continue;
            }
            blocked[j] = true;
            if has_perfect_matching(i + 1..s, &adj, &blocked) {
                chosen = Some(j);
                break;
            }
            blocked[j] = false;
        }
        out.push(chosen?);
    }
    Some(out)
}
