//! Graphs, vertex orderings, completions and the umbrella property.

use std::cmp::Ordering as CmpOrdering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::bitset::BitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate pair {0}-{1}")]
    DuplicatePair(usize, usize),
    #[error("pair {0}-{1} is already an edge")]
    PairIsEdge(usize, usize),
    #[error("position {pos} assigned twice")]
    PositionReused { pos: usize },
    #[error("vertex {0} assigned twice")]
    VertexReused(usize),
    #[error("position 0 is not a valid position")]
    ZeroPosition,
    #[error("orderings have different domains")]
    DomainMismatch,
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    rows: Vec<BitSet>,
    nbrs: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, m: 0, rows: vec![BitSet::new(n); n], nbrs: vec![Vec::new(); n] }
    }

    /// Builds a graph, rejecting loops, repeated pairs and out-of-range endpoints.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut rows = vec![BitSet::new(n); n];
        let mut m = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { v: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !rows[u].insert(v) {
                return Err(GraphError::DuplicatePair(u.min(v), u.max(v)));
            }
            rows[v].insert(u);
            m += 1;
        }
        Ok(Self::from_rows(rows, m))
    }

    fn from_rows(rows: Vec<BitSet>, m: usize) -> Self {
        let nbrs = rows.iter().map(|r| r.iter().collect()).collect();
        Graph { n: rows.len(), m, rows, nbrs }
    }

    pub fn complete(n: usize) -> Self {
        let mut rows = vec![BitSet::full(n); n];
        for (v, r) in rows.iter_mut().enumerate() {
            r.remove(v);
        }
        Self::from_rows(rows, n * n.saturating_sub(1) / 2)
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    pub fn neighbor_set(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn closed_neighbor_set(&self, v: usize) -> BitSet {
        let mut s = self.rows[v].clone();
        s.insert(v);
        s
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.nbrs[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Non-edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).filter(move |&v| !self.has_edge(u, v)).map(move |v| (u, v)))
    }

    pub fn with_completion(&self, f: &Completion) -> Graph {
        let mut rows = self.rows.clone();
        for &(u, v) in f.iter() {
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Self::from_rows(rows, self.m + f.len())
    }

    /// Subgraph induced by `vertices`, relabelled so `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut rows = vec![BitSet::new(k); k];
        let mut m = 0;
        for i in 0..k {
            for j in i + 1..k {
                if self.has_edge(vertices[i], vertices[j]) {
                    rows[i].insert(j);
                    rows[j].insert(i);
                    m += 1;
                }
            }
        }
        Self::from_rows(rows, m)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        Self::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.nbrs[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Injective map from a vertex subset to positions (1-based).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexOrdering {
    // 0 = not in the domain
    pos: Vec<usize>,
}

impl std::fmt::Debug for VertexOrdering {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

impl VertexOrdering {
    /// `seq[i]` gets position `i + 1`; the universe is `0..seq.len()`.
    pub fn from_sequence(seq: &[usize]) -> Result<Self, GraphError> {
        Self::from_pairs(seq.len(), seq.iter().enumerate().map(|(i, &v)| (v, i + 1)))
    }

    pub fn from_pairs(
        universe: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut pos = vec![0; universe];
        let mut used = BTreeSet::new();
        for (v, p) in pairs {
            if v >= universe {
                return Err(GraphError::VertexOutOfRange { v, n: universe });
            }
            if p == 0 {
                return Err(GraphError::ZeroPosition);
            }
            if pos[v] != 0 {
                return Err(GraphError::VertexReused(v));
            }
            if !used.insert(p) {
                return Err(GraphError::PositionReused { pos: p });
            }
            pos[v] = p;
        }
        Ok(VertexOrdering { pos })
    }

    /// From the associated sequence: `pos[v]` is the position of `v`, 0 meaning absent.
    pub fn from_position_vec(pos: Vec<usize>) -> Result<Self, GraphError> {
        let n = pos.len();
        Self::from_pairs(n, pos.into_iter().enumerate().filter(|&(_, p)| p != 0))
    }

    pub fn universe(&self) -> usize {
        self.pos.len()
    }

    #[inline]
    pub fn position(&self, v: usize) -> Option<usize> {
        match self.pos.get(v) {
            Some(&p) if p != 0 => Some(p),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.pos.iter().filter(|&&p| p != 0).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(vertex, position)` pairs in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pos.iter().enumerate().filter(|&(_, &p)| p != 0).map(|(v, &p)| (v, p))
    }

    pub fn domain(&self) -> Vec<usize> {
        self.iter().map(|(v, _)| v).collect()
    }

    /// Domain vertices sorted by position.
    pub fn sequence(&self) -> Vec<usize> {
        let mut d: Vec<(usize, usize)> = self.iter().map(|(v, p)| (p, v)).collect();
        d.sort_unstable();
        d.into_iter().map(|(_, v)| v).collect()
    }

    /// True when every vertex of the universe is placed and the image is `1..=n`.
    pub fn is_total(&self) -> bool {
        let n = self.pos.len();
        let mut seen = vec![false; n + 1];
        for &p in &self.pos {
            if p == 0 || p > n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        true
    }

    /// Raw position vector (0 = absent).
    pub fn positions(&self) -> &[usize] {
        &self.pos
    }

    pub fn same_domain(&self, other: &VertexOrdering) -> bool {
        self.pos.len() == other.pos.len()
            && self.pos.iter().zip(&other.pos).all(|(&a, &b)| (a == 0) == (b == 0))
    }
}

/// Set of non-edges added to a graph.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Completion {
    pairs: BTreeSet<(usize, usize)>,
}

impl Completion {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates that every pair is an in-range non-edge of `g`; pairs are normalized.
    pub fn new(g: &Graph, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut out = BTreeSet::new();
        for (u, v) in pairs {
            for x in [u, v] {
                if x >= g.n() {
                    return Err(GraphError::VertexOutOfRange { v: x, n: g.n() });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::PairIsEdge(u.min(v), u.max(v)));
            }
            if !out.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicatePair(u.min(v), u.max(v)));
            }
        }
        Ok(Completion { pairs: out })
    }

    pub(crate) fn from_set(pairs: BTreeSet<(usize, usize)>) -> Self {
        Completion { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.pairs.contains(&(u.min(v), u.max(v)))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, usize)> {
        self.pairs.iter()
    }

    pub fn to_vec(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().copied().collect()
    }

    pub fn is_subset(&self, other: &Completion) -> bool {
        self.pairs.is_subset(&other.pairs)
    }
}

/// The fixed base ordering σ0 used to break ties between orderings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TieBreaker {
    order: Vec<usize>,
}

impl TieBreaker {
    /// Ascending vertex id.
    pub fn identity(n: usize) -> Self {
        TieBreaker { order: (0..n).collect() }
    }

    /// `order` lists the vertices from smallest to largest.
    pub fn from_order(order: Vec<usize>) -> Result<Self, GraphError> {
        VertexOrdering::from_sequence(&order)?;
        Ok(TieBreaker { order })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn is_identity(&self) -> bool {
        self.order.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `rank[v]` is the index of `v` in σ0.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            r[v] = i;
        }
        r
    }
}

/// Compares associated sequences of two orderings with the same domain.
pub fn lex_compare(
    a: &VertexOrdering,
    b: &VertexOrdering,
    tb: &TieBreaker,
) -> Result<CmpOrdering, GraphError> {
    if !a.same_domain(b) {
        return Err(GraphError::DomainMismatch);
    }
    for &v in tb.order() {
        if v >= a.universe() {
            continue;
        }
        match a.pos[v].cmp(&b.pos[v]) {
            CmpOrdering::Equal => {}
            c => return Ok(c),
        }
    }
    Ok(CmpOrdering::Equal)
}

/// Umbrella check on the vertices of `ord`'s domain, read in position order.
///
/// Every edge spanning an interval of the sequence must make that interval a clique.
pub fn has_umbrella_property(g: &Graph, ord: &VertexOrdering) -> bool {
    let seq = ord.sequence();
    umbrella_sequence(g, &seq)
}

pub(crate) fn umbrella_sequence(g: &Graph, seq: &[usize]) -> bool {
    // right neighbours of each vertex must be contiguous and their reach non-decreasing
    let mut prev_reach = 0;
    for i in 0..seq.len() {
        let mut reach = i;
        while reach + 1 < seq.len() && g.has_edge(seq[i], seq[reach + 1]) {
            reach += 1;
        }
        for j in reach + 1..seq.len() {
            if g.has_edge(seq[i], seq[j]) {
                return false;
            }
        }
        if reach < prev_reach {
            return false;
        }
        prev_reach = reach;
    }
    true
}

/// Graph on positions: vertex `p - 1` stands for position `p`.
pub fn induced_graph(g: &Graph, ord: &VertexOrdering) -> Graph {
    let seq = ord.sequence();
    g.induced_subgraph(&seq)
}
