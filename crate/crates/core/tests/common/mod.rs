#![allow(dead_code)]

use std::collections::BTreeSet;

use pic_core::Graph;

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn code(n: usize, adj: &[u32], perm: &[usize]) -> u64 {
    // perm[i] = original vertex placed at i
    let mut c = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            c = c << 1 | (adj[perm[i]] >> perm[j] & 1) as u64;
        }
    }
    c
}

/// Canonical code: vertices sorted by degree, then the best permutation
/// inside each degree class.
fn canonical(n: usize, adj: &[u32]) -> (Vec<u32>, u64) {
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| deg[v]);
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if deg[c[0]] == deg[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let per: Vec<Vec<Vec<usize>>> = classes.iter().map(|c| permutations(c)).collect();
    let mut best = u64::MAX;
    let mut idx = vec![0usize; per.len()];
    loop {
        let perm: Vec<usize> = idx.iter().enumerate().flat_map(|(i, &j)| per[i][j].iter().copied()).collect();
        best = best.min(code(n, adj, &perm));
        let mut i = 0;
        while i < idx.len() {
            idx[i] += 1;
            if idx[i] < per[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == idx.len() {
            break;
        }
    }
    let mut degs: Vec<u32> = deg.clone();
    degs.sort();
    (degs, best)
}

fn from_code(n: usize, c: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = n * (n - 1) / 2;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if c >> bit & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// All graphs on `n` vertices up to isomorphism, each relabelled canonically.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut level: BTreeSet<(Vec<u32>, u64)> = BTreeSet::new();
    level.insert((vec![], 0));
    for m in 1..=n {
        let mut next = BTreeSet::new();
        for (_, c) in &level {
            let g = if m == 1 { Graph::empty(0) } else { from_code(m - 1, *c) };
            for mask in 0u32..(1 << (m - 1)) {
                let mut adj = vec![0u32; m];
                for (u, v) in g.edges() {
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
                for u in 0..m - 1 {
                    if mask >> u & 1 == 1 {
                        adj[u] |= 1 << (m - 1);
                        adj[m - 1] |= 1 << u;
                    }
                }
                next.insert(canonical(m, &adj));
            }
        }
        level = next;
    }
    level.into_iter().map(|(_, c)| if n == 0 { Graph::empty(0) } else { from_code(n, c) }).collect()
}

pub fn connected_graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(all_graphs).filter(|g| g.is_connected()).collect()
}

pub fn named(name: &str) -> Graph {
    match name {
        "claw" => Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap(),
        "net" => Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap(),
        "tent" => Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)]).unwrap(),
        _ => panic!("unknown graph {name}"),
    }
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Non-edges spanned by some edge when the vertices are laid out as `seq`.
pub fn spanned_fill(adj: &[Vec<bool>], seq: &[usize]) -> BTreeSet<(usize, usize)> {
    let n = seq.len();
    let mut reach = 0;
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if adj[seq[i]][seq[j]] {
                reach = reach.max(j);
            }
        }
        for j in i + 1..=reach.max(i) {
            let (a, b) = (seq[i], seq[j]);
            if !adj[a][b] {
                out.insert((a.min(b), a.max(b)));
            }
        }
    }
    out
}

/// Every edge between positions `i < k` has both endpoints adjacent to everything in between.
pub fn is_umbrella(adj: &[Vec<bool>], seq: &[usize]) -> bool {
    let n = seq.len();
    for i in 0..n {
        for k in i + 1..n {
            if adj[seq[i]][seq[k]] && (i + 1..k).any(|j| !adj[seq[i]][seq[j]] || !adj[seq[j]][seq[k]]) {
                return false;
            }
        }
    }
    true
}

/// Minimum completion size and the lexicographically smallest position
/// vector attaining it, by trying every ordering.
pub fn exhaustive(g: &Graph) -> (usize, Vec<usize>) {
    let adj = adjacency(g);
    let verts: Vec<usize> = (0..g.n()).collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for seq in permutations(&verts) {
        let c = spanned_fill(&adj, &seq).len();
        let mut pos = vec![0; g.n()];
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = i + 1;
        }
        if best.as_ref().is_none_or(|(bc, bp)| (c, &pos) < (*bc, bp)) {
            best = Some((c, pos));
        }
    }
    best.unwrap_or((0, Vec::new()))
}
pub mod replay;
pub mod properties;
