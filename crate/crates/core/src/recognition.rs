//! Proper interval recognition (three LexBFS+ sweeps), canonical umbrella
//! orderings and forbidden induced subgraph witnesses.

use std::cmp::Ordering as CmpOrdering;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{umbrella_sequence, Graph, TieBreaker, VertexOrdering};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ForbiddenKind {
    Claw,
    Net,
    Tent,
    Hole,
}

/// An induced claw, net, tent or chordless cycle.
///
/// Vertex layout: claw = centre then leaves; net and tent = triangle then the
/// three outer vertices; hole = cycle order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenStructure {
    pub kind: ForbiddenKind,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognitionResult {
    pub is_proper_interval: bool,
    pub canonical_ordering: Option<VertexOrdering>,
    pub witness: Option<ForbiddenStructure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognitionError {
    #[error("graph is not a proper interval graph")]
    NotProperInterval,
}

pub fn recognize(g: &Graph, tb: &TieBreaker) -> RecognitionResult {
    match canonical_umbrella_ordering(g, tb) {
        Ok(o) => RecognitionResult { is_proper_interval: true, canonical_ordering: Some(o), witness: None },
        Err(_) => {
            let w = find_forbidden_structure(g).expect("non-recognized graph has a forbidden structure");
            RecognitionResult { is_proper_interval: false, canonical_ordering: None, witness: Some(w) }
        }
    }
}

pub fn is_proper_interval(g: &Graph) -> bool {
    g.components().iter().all(|c| umbrella_order_of_component(g, c).is_some())
}

/// LexBFS over `vertices`; with `prev`, ties go to the vertex latest in `prev`.
fn lexbfs(g: &Graph, vertices: &[usize], prev: Option<&[usize]>) -> Vec<usize> {
    let mut rank = vec![0usize; g.n()];
    if let Some(p) = prev {
        for (i, &v) in p.iter().enumerate() {
            rank[v] = i;
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![vertices.to_vec()];
    let mut out = Vec::with_capacity(vertices.len());
    while !classes.is_empty() {
        let first = &mut classes[0];
        let idx = match prev {
            Some(_) => (0..first.len()).max_by_key(|&i| rank[first[i]]).unwrap(),
            None => 0,
        };
        let v = first.remove(idx);
        if first.is_empty() {
            classes.remove(0);
        }
        out.push(v);
        let mut next = Vec::with_capacity(classes.len() * 2);
        for c in classes {
            let (inn, outn): (Vec<usize>, Vec<usize>) = c.into_iter().partition(|&w| g.has_edge(v, w));
            if !inn.is_empty() {
                next.push(inn);
            }
            if !outn.is_empty() {
                next.push(outn);
            }
        }
        classes = next;
    }
    out
}

/// Some umbrella ordering of a connected component, or `None`.
fn umbrella_order_of_component(g: &Graph, comp: &[usize]) -> Option<Vec<usize>> {
    let s1 = lexbfs(g, comp, None);
    let s2 = lexbfs(g, comp, Some(&s1));
    let s3 = lexbfs(g, comp, Some(&s2));
    umbrella_sequence(g, &s3).then_some(s3)
}

/// Splits an umbrella sequence into runs of vertices with equal closed neighbourhoods.
pub fn twin_blocks(g: &Graph, seq: &[usize]) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &v in seq {
        if let Some(b) = blocks.last_mut() {
            let u = b[0];
            if g.has_edge(u, v) && g.closed_neighbor_set(u) == g.closed_neighbor_set(v) {
                b.push(v);
                continue;
            }
        }
        blocks.push(vec![v]);
    }
    blocks
}

/// The umbrella ordering whose associated sequence (read in σ0 order) is lexicographically minimum.
pub fn canonical_umbrella_ordering(g: &Graph, tb: &TieBreaker) -> Result<VertexOrdering, RecognitionError> {
    let rank = tb.ranks();
    let mut comps = g.components();
    comps.sort_by_key(|c| c.iter().map(|&v| rank[v]).min());
    let mut pos = vec![0usize; g.n()];
    let mut offset = 0;
    for comp in comps {
        let seq = umbrella_order_of_component(g, &comp).ok_or(RecognitionError::NotProperInterval)?;
        let mut blocks = twin_blocks(g, &seq);
        for b in blocks.iter_mut() {
            b.sort_by_key(|&v| rank[v]);
        }
        let place = |blocks: &[Vec<usize>]| -> Vec<(usize, usize)> {
            blocks.iter().flatten().enumerate().map(|(i, &v)| (v, offset + i + 1)).collect()
        };
        let fwd = place(&blocks);
        blocks.reverse();
        let bwd = place(&blocks);
        let key = |pl: &[(usize, usize)]| {
            let mut k: Vec<(usize, usize)> = pl.iter().map(|&(v, p)| (rank[v], p)).collect();
            k.sort_unstable();
            k.into_iter().map(|(_, p)| p).collect::<Vec<_>>()
        };
        let chosen = if key(&bwd).cmp(&key(&fwd)) == CmpOrdering::Less { bwd } else { fwd };
        for (v, p) in chosen {
            pos[v] = p;
        }
        offset += comp.len();
    }
    Ok(VertexOrdering::from_position_vec(pos).expect("positions form a permutation"))
}

fn is_chordal(g: &Graph) -> bool {
    let all: Vec<usize> = (0..g.n()).collect();
    let order = lexbfs(g, &all, None);
    let mut idx = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        idx[v] = i;
    }
    // reverse of a LexBFS order is a perfect elimination order iff the graph is chordal
    for &v in &order {
        let earlier: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| idx[w] < idx[v]).collect();
        if let Some(&p) = earlier.iter().max_by_key(|&&w| idx[w]) {
            if earlier.iter().any(|&w| w != p && !g.has_edge(w, p)) {
                return false;
            }
        }
    }
    true
}

fn shortest_hole(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut best: Option<Vec<usize>> = None;
    for v in 0..n {
        let nb = g.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                // BFS a -> b avoiding N[v] except a and b
                let mut parent = vec![usize::MAX; n];
                parent[a] = a;
                let mut q = VecDeque::from([a]);
                let mut found = false;
                while let Some(x) = q.pop_front() {
                    if x == b {
                        found = true;
                        break;
                    }
                    for &y in g.neighbors(x) {
                        if parent[y] != usize::MAX || y == v {
                            continue;
                        }
                        if y != b && g.has_edge(v, y) {
                            continue;
                        }
                        parent[y] = x;
                        q.push_back(y);
                    }
                }
                if !found {
                    continue;
                }
                let mut path = vec![b];
                let mut x = b;
                while x != a {
                    x = parent[x];
                    path.push(x);
                }
                path.reverse();
                let mut cycle = vec![v];
                cycle.extend(path);
                if best.as_ref().is_none_or(|h| cycle.len() < h.len()) {
                    let done = cycle.len() == 4;
                    best = Some(cycle);
                    if done {
                        return best;
                    }
                }
            }
        }
    }
    best
}

fn independent(g: &Graph, vs: &[usize]) -> bool {
    vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| !g.has_edge(a, b)))
}

fn find_claw(g: &Graph) -> Option<Vec<usize>> {
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if g.has_edge(a, b) {
                    continue;
                }
                for &c in &nb[j + 1..] {
                    if !g.has_edge(a, c) && !g.has_edge(b, c) {
                        return Some(vec![v, a, b, c]);
                    }
                }
            }
        }
    }
    None
}

fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        for &c in g.neighbors(b) {
            if c > b && g.has_edge(a, c) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn find_net(g: &Graph, tris: &[[usize; 3]]) -> Option<Vec<usize>> {
    for &[a, b, c] in tris {
        let private = |x: usize, y: usize, z: usize| -> Vec<usize> {
            g.neighbors(x).iter().copied().filter(|&w| w != y && w != z && !g.has_edge(w, y) && !g.has_edge(w, z)).collect()
        };
        let (pa, pb, pc) = (private(a, b, c), private(b, a, c), private(c, a, b));
        for &x in &pa {
            for &y in &pb {
                for &z in &pc {
                    if independent(g, &[x, y, z]) {
                        return Some(vec![a, b, c, x, y, z]);
                    }
                }
            }
        }
    }
    None
}

fn find_tent(g: &Graph, tris: &[[usize; 3]]) -> Option<Vec<usize>> {
    for &[a, b, c] in tris {
        let common = |x: usize, y: usize, z: usize| -> Vec<usize> {
            g.neighbors(x).iter().copied().filter(|&w| w != y && w != z && g.has_edge(w, y) && !g.has_edge(w, z)).collect()
        };
        let (xab, xbc, xca) = (common(a, b, c), common(b, c, a), common(c, a, b));
        for &x in &xab {
            for &y in &xbc {
                for &z in &xca {
                    if independent(g, &[x, y, z]) {
                        return Some(vec![a, b, c, x, y, z]);
                    }
                }
            }
        }
    }
    None
}

/// A forbidden induced subgraph, or `None` when `g` is proper interval.
///
/// Holes are searched first (a shortest one is reported), then claws, nets and tents.
pub fn find_forbidden_structure(g: &Graph) -> Option<ForbiddenStructure> {
    if !is_chordal(g) {
        let h = shortest_hole(g).expect("non-chordal graph has a hole");
        return Some(ForbiddenStructure { kind: ForbiddenKind::Hole, vertices: h });
    }
    if let Some(c) = find_claw(g) {
        return Some(ForbiddenStructure { kind: ForbiddenKind::Claw, vertices: c });
    }
    let tris = triangles(g);
    if let Some(c) = find_net(g, &tris) {
        return Some(ForbiddenStructure { kind: ForbiddenKind::Net, vertices: c });
    }
    if let Some(c) = find_tent(g, &tris) {
        return Some(ForbiddenStructure { kind: ForbiddenKind::Tent, vertices: c });
    }
    None
}

/// The graph a witness should induce, in the vertex layout of [`ForbiddenStructure`].
pub fn template(kind: ForbiddenKind, len: usize) -> Graph {
    match kind {
        ForbiddenKind::Claw => Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap(),
        ForbiddenKind::Net => Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)]).unwrap(),
        ForbiddenKind::Tent => Graph::from_edges(
            6,
            [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)],
        )
        .unwrap(),
        ForbiddenKind::Hole => Graph::cycle(len),
    }
}
