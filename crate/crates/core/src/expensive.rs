//! Branching on expensive vertices: vertices incident to more than `tau`
//! completion edges are guessed together with their position and the extent
//! of their neighbourhood, removed, and replaced by sandwich constraints on the
//! remaining graph.

use std::fmt;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::graph::{Completion, Graph, VertexOrdering};
use crate::spic::{completion_pairs, SpicInstance};

pub const DEFAULT_CEILING: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Threshold {
    pub tau: usize,
}

/// `tau = ceil((2k)^(1/3))`, by integer search.
pub fn compute_threshold(k: usize) -> Threshold {
    let target = 2 * k as u128;
    let mut t: u128 = 0;
    while t * t * t < target {
        t += 1;
    }
    Threshold { tau: t as usize }
}

/// Guessed position `p` of an expensive vertex and the first and last
/// positions `left`, `right` of its closed neighbourhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Placement {
    pub pos: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExpensiveGuess {
    /// Sorted by vertex.
    pub entries: Vec<(usize, Placement)>,
}

impl ExpensiveGuess {
    pub fn empty() -> Self {
        ExpensiveGuess::default()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.0).collect()
    }

    pub fn placement(&self, v: usize) -> Option<Placement> {
        self.entries.iter().find(|e| e.0 == v).map(|e| e.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    BadInterval(usize),
    SamePosition(usize, usize),
    NotMonotone(usize, usize),
    PairInconsistent(usize, usize),
    SandwichNotNested,
    SandwichNotUmbrella,
    EmptyPositions(usize),
    OverBudget,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::BadInterval(v) => write!(f, "interval of vertex {v} is malformed"),
            Rejection::SamePosition(a, b) => write!(f, "vertices {a} and {b} share a position"),
            Rejection::NotMonotone(a, b) => write!(f, "intervals of {a} and {b} are not monotone"),
            Rejection::PairInconsistent(a, b) => write!(f, "intervals of {a} and {b} disagree on adjacency"),
            Rejection::SandwichNotNested => write!(f, "lower sandwich graph exceeds the upper one"),
            Rejection::SandwichNotUmbrella => write!(f, "sandwich graph is not an umbrella graph"),
            Rejection::EmptyPositions(u) => write!(f, "vertex {u} has no allowed position"),
            Rejection::OverBudget => write!(f, "guessed cost exceeds the budget"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BranchInstance {
    pub spic: SpicInstance,
    pub cost_offset: usize,
    /// `pos_map[i - 1]` is the position in G of the i-th free position.
    pub pos_map: Vec<usize>,
    /// Vertex of G for each vertex of H.
    pub w: Vec<usize>,
    pub sigma_dollar: VertexOrdering,
    pub f_dollar: Completion,
    pub guess: ExpensiveGuess,
}

impl BranchInstance {
    /// Positions in G of the expensive neighbours of H-vertex `u`.
    pub fn anchor_positions(&self, g: &Graph, u: usize) -> Vec<usize> {
        let x = self.w[u];
        self.guess.entries.iter().filter(|(v, _)| g.has_edge(*v, x)).map(|(_, pl)| pl.pos).collect()
    }
}

/// Enumeration step whose size went over the ceiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Guesses,
    SectionWork,
    Triples,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Guesses => "expensive-vertex guesses",
            Stage::SectionWork => "section enumeration steps",
            Stage::Triples => "twin triples",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{count} {stage} exceed the limit of {limit} set by the ceiling")]
pub struct Refused {
    pub stage: Stage,
    pub count: usize,
    pub limit: usize,
}

fn pair_check(g: &Graph, v1: usize, a: Placement, v2: usize, b: Placement) -> Result<bool, Rejection> {
    if a.pos == b.pos {
        return Err(Rejection::SamePosition(v1, v2));
    }
    let (lo, hi) = if a.pos < b.pos { (a, b) } else { (b, a) };
    if lo.left > hi.left || lo.right > hi.right {
        return Err(Rejection::NotMonotone(v1, v2));
    }
    let in12 = a.left <= b.pos && b.pos <= a.right;
    let in21 = b.left <= a.pos && a.pos <= b.right;
    if in12 != in21 || (g.has_edge(v1, v2) && !in12) {
        return Err(Rejection::PairInconsistent(v1, v2));
    }
    Ok(in12)
}

pub fn build_sandwich(guess: &ExpensiveGuess, g: &Graph, k: usize) -> Result<BranchInstance, Rejection> {
    let n = g.n();
    for &(v, pl) in &guess.entries {
        if !(1 <= pl.left && pl.left <= pl.pos && pl.pos <= pl.right && pl.right <= n) || pl.right - pl.left < g.degree(v) {
            return Err(Rejection::BadInterval(v));
        }
    }
    let mut f_dollar = Vec::new();
    for (i, &(v1, a)) in guess.entries.iter().enumerate() {
        for &(v2, b) in &guess.entries[i + 1..] {
            if pair_check(g, v1, a, v2, b)? && !g.has_edge(v1, v2) {
                f_dollar.push((v1.min(v2), v1.max(v2)));
            }
        }
    }
    let incident: usize = guess.entries.iter().map(|&(v, pl)| pl.right - pl.left - g.degree(v)).sum();
    if incident < f_dollar.len() || incident - f_dollar.len() > k {
        return Err(Rejection::OverBudget);
    }
    let cost_offset = incident - f_dollar.len();

    let mut taken = vec![false; n + 1];
    for (_, pl) in &guess.entries {
        taken[pl.pos] = true;
    }
    let pos_map: Vec<usize> = (1..=n).filter(|&p| !taken[p]).collect();
    let is_exp: Vec<bool> = (0..n).map(|v| guess.placement(v).is_some()).collect();
    let w: Vec<usize> = (0..n).filter(|&v| !is_exp[v]).collect();
    let nh = w.len();
    let h = g.induced_subgraph(&w);

    let mut allowed = Vec::with_capacity(nh);
    for (u, &x) in w.iter().enumerate() {
        let mut s = BitSet::new(nh + 1);
        for (i, &p) in pos_map.iter().enumerate() {
            if guess.entries.iter().all(|&(v, pl)| !g.has_edge(v, x) || (pl.left <= p && p <= pl.right)) {
                s.insert(i + 1);
            }
        }
        if s.is_empty() {
            return Err(Rejection::EmptyPositions(u));
        }
        allowed.push(s);
    }

    let mut down = Vec::new();
    let mut up = Vec::new();
    for i in 0..nh {
        for j in i + 1..nh {
            let (pi, pj) = (pos_map[i], pos_map[j]);
            let d = guess.entries.iter().any(|(_, x)| (x.left <= pi && pj < x.pos) || (x.pos < pi && pj <= x.right));
            let cut = guess.entries.iter().any(|(_, y)| (pi < y.left && y.pos < pj) || (pi < y.pos && y.right < pj));
            if d && cut {
                return Err(Rejection::SandwichNotNested);
            }
            if d {
                down.push((i, j));
            }
            if !cut {
                up.push((i, j));
            }
        }
    }
    let g_down = Graph::from_edges(nh, down).expect("valid pairs");
    let g_up = Graph::from_edges(nh, up).expect("valid pairs");
    let spic = SpicInstance::new(h, k - cost_offset, allowed, g_down, g_up).map_err(|_| Rejection::SandwichNotUmbrella)?;
    let sigma_dollar = VertexOrdering::from_pairs(n, guess.entries.iter().map(|&(v, pl)| (v, pl.pos))).expect("distinct positions");
    Ok(BranchInstance {
        spic,
        cost_offset,
        pos_map,
        w,
        sigma_dollar,
        f_dollar: Completion::from_set(f_dollar.into_iter().collect()),
        guess: guess.clone(),
    })
}

/// Candidate placements of one expensive vertex of degree `deg`.
fn placements(n: usize, deg: usize, tau: usize, k: usize) -> Vec<Placement> {
    let mut out = Vec::new();
    for left in 1..=n {
        for right in left..=n {
            let extra = (right - left).checked_sub(deg);
            match extra {
                Some(e) if e > tau && e <= k => {}
                _ => continue,
            }
            for pos in left..=right {
                out.push(Placement { pos, left, right });
            }
        }
    }
    out.sort();
    out
}

/// All guesses surviving the cleanup rules that can be checked without
/// building the sandwich, subsets by increasing size, then placements
/// lexicographically.
pub fn enumerate_guesses(g: &Graph, k: usize, tau: usize, ceiling: usize) -> Result<Vec<ExpensiveGuess>, Refused> {
    let n = g.n();
    let max_size = if tau == 0 { 2 * k } else { (2 * k / (tau + 1)).min(tau * tau) }.min(n);
    let cands: Vec<Vec<Placement>> = (0..n).map(|v| placements(n, g.degree(v), tau, k)).collect();
    let mut out = vec![ExpensiveGuess::empty()];
    struct Ctx<'a> {
        g: &'a Graph,
        k: usize,
        cands: &'a [Vec<Placement>],
        ceiling: usize,
        out: &'a mut Vec<ExpensiveGuess>,
    }
    fn rec(c: &mut Ctx, size: usize, start: usize, cur: &mut Vec<(usize, Placement)>, incident: usize) -> Result<(), Refused> {
        if cur.len() == size {
            if c.out.len() >= c.ceiling {
                return Err(Refused { stage: Stage::Guesses, count: c.out.len() + 1, limit: c.ceiling });
            }
            c.out.push(ExpensiveGuess { entries: cur.clone() });
            return Ok(());
        }
        let n = c.g.n();
        for v in start..n {
            if n - v < size - cur.len() {
                break;
            }
            for &pl in &c.cands[v] {
                let e = pl.right - pl.left - c.g.degree(v);
                if incident + e > 2 * c.k {
                    continue;
                }
                if cur.iter().any(|&(u, q)| pair_check(c.g, u, q, v, pl).is_err()) {
                    continue;
                }
                cur.push((v, pl));
                rec(c, size, v + 1, cur, incident + e)?;
                cur.pop();
            }
        }
        Ok(())
    }
    let mut ctx = Ctx { g, k, cands: &cands, ceiling, out: &mut out };
    for size in 1..=max_size {
        rec(&mut ctx, size, 0, &mut Vec::new(), 0)?;
    }
    Ok(out)
}

/// Lazily built branch instances; guesses rejected by the cleanup rules are skipped.
pub struct BranchStream<'a> {
    g: &'a Graph,
    k: usize,
    guesses: std::vec::IntoIter<ExpensiveGuess>,
    pub rejected: usize,
}

impl<'a> BranchStream<'a> {
    pub fn guess_count(&self) -> usize {
        self.guesses.len()
    }
}

impl Iterator for BranchStream<'_> {
    type Item = BranchInstance;

    fn next(&mut self) -> Option<BranchInstance> {
        for guess in self.guesses.by_ref() {
            match build_sandwich(&guess, self.g, self.k) {
                Ok(b) => return Some(b),
                Err(_) => self.rejected += 1,
            }
        }
        None
    }
}

pub fn enumerate_branches(g: &Graph, k: usize, tau: usize, ceiling: usize) -> Result<BranchStream<'_>, Refused> {
    let guesses = enumerate_guesses(g, k, tau, ceiling)?;
    Ok(BranchStream { g, k, guesses: guesses.into_iter(), rejected: 0 })
}

/// Maps an ordering of H back to G and recomputes the minimal completion.
pub fn lift_solution(branch: &BranchInstance, g: &Graph, ord_h: &VertexOrdering) -> (VertexOrdering, Completion) {
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (u, p) in ord_h.iter() {
        pos[branch.w[u]] = branch.pos_map[p - 1];
    }
    for (v, p) in branch.sigma_dollar.iter() {
        pos[v] = p;
    }
    let ord = VertexOrdering::from_position_vec(pos).expect("lifted ordering is a bijection");
    let inst = SpicInstance::trivial(g.clone(), usize::MAX);
    let f = Completion::from_set(completion_pairs(&inst, &ord));
    (ord, f)
}
