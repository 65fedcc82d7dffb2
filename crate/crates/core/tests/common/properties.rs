//! Structural properties of umbrella orderings, checked on seeded random instances.

use std::collections::BTreeSet;

use pic_core::dp::jump;
use pic_core::recognition::canonical_umbrella_ordering;
use pic_core::{has_umbrella_property, minimal_completion, Completion, Graph, SpicInstance, TieBreaker, VertexOrdering};
use proptest::test_runner::{Config, RngSeed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{adjacency, is_umbrella, spanned_fill};

pub type Property = fn(usize, u64) -> Result<(), String>;

pub const CASES: u32 = 1000;

pub fn config() -> Config {
    Config { cases: CASES, rng_seed: RngSeed::Fixed(0x00c0_ffee), failure_persistence: None, ..Config::default() }
}

pub const PROPERTIES: &[(&str, Property)] = &[
    ("umbrella closure under union and intersection", umbrella_closure),
    ("minimal fill is inclusion-minimal", fill_minimal),
    ("jumps are monotone", jump_monotone),
    ("jump blocks are separating cliques", jump_cut),
    ("iterated jumps interleave", interleave),
    ("iterated jump cuts partition the suffix", z_cut),
    ("twin classes are consecutive", twins_consecutive),
];

fn shuffled(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut seq: Vec<usize> = (0..n).collect();
    seq.shuffle(rng);
    seq
}

/// Edges `seq[i] seq[j]` for `i < j <= reach(i)` with a random non-decreasing reach.
fn umbrella_edges(seq: &[usize], rng: &mut ChaCha8Rng) -> BTreeSet<(usize, usize)> {
    let n = seq.len();
    let mut out = BTreeSet::new();
    let mut reach = 0;
    for i in 0..n {
        let step = rng.gen_range(0..=(n - 1 - i).min(3));
        reach = reach.max(i + step);
        for j in i + 1..=reach {
            let (a, b) = (seq[i], seq[j]);
            out.insert((a.min(b), a.max(b)));
        }
    }
    out
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let p: f64 = rng.gen_range(0.2..0.8);
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// A random graph completed along a random ordering, with that ordering.
fn completed(n: usize, seed: u64) -> (Graph, VertexOrdering, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_graph(n, &mut rng);
    let seq = shuffled(n, &mut rng);
    let ord = VertexOrdering::from_sequence(&seq).unwrap();
    let f = minimal_completion(&SpicInstance::trivial(g.clone(), usize::MAX), &ord).unwrap();
    (g.with_completion(&f), ord, seq)
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn umbrella_closure(n: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq = shuffled(n, &mut rng);
    let e1 = umbrella_edges(&seq, &mut rng);
    let e2 = umbrella_edges(&seq, &mut rng);
    let ord = VertexOrdering::from_sequence(&seq).unwrap();
    for (name, edges) in [("first", e1.clone()), ("second", e2.clone()), ("union", &e1 | &e2), ("intersection", &e1 & &e2)] {
        let g = Graph::from_edges(n, edges).unwrap();
        check(has_umbrella_property(&g, &ord) && is_umbrella(&adjacency(&g), &seq), || format!("{name} of {e1:?} and {e2:?} along {seq:?}"))?;
    }
    Ok(())
}

pub fn fill_minimal(n: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_graph(n, &mut rng);
    let seq = shuffled(n, &mut rng);
    let ord = VertexOrdering::from_sequence(&seq).unwrap();
    let f = minimal_completion(&SpicInstance::trivial(g.clone(), usize::MAX), &ord).unwrap();
    let pairs: BTreeSet<(usize, usize)> = f.iter().copied().collect();
    check(pairs == spanned_fill(&adjacency(&g), &seq), || format!("{g:?} along {seq:?}: fill {pairs:?}"))?;
    check(has_umbrella_property(&g.with_completion(&f), &ord), || format!("{g:?} along {seq:?} not completed"))?;
    for &e in &pairs {
        let smaller = Completion::new(&g, pairs.iter().copied().filter(|&x| x != e)).unwrap();
        check(!has_umbrella_property(&g.with_completion(&smaller), &ord), || format!("{g:?} along {seq:?}: {e:?} is redundant"))?;
    }
    Ok(())
}

fn jumps(gs: &Graph, ord: &VertexOrdering) -> Vec<usize> {
    let n = gs.n();
    // index 0 unused; n + 1 stands for "no jump" and is its own jump
    let mut j = vec![0; n + 2];
    for p in 1..=n {
        j[p] = jump(gs, ord, p).unwrap_or(n + 1);
    }
    j[n + 1] = n + 1;
    j
}

pub fn jump_monotone(n: usize, seed: u64) -> Result<(), String> {
    let (gs, ord, seq) = completed(n, seed);
    let j = jumps(&gs, &ord);
    for p in 1..=n {
        for q in p..=n {
            check(j[p] <= j[q], || format!("{gs:?} along {seq:?}: jump({p}) > jump({q})"))?;
        }
    }
    Ok(())
}

pub fn jump_cut(n: usize, seed: u64) -> Result<(), String> {
    let (gs, ord, seq) = completed(n, seed);
    let adj = adjacency(&gs);
    let j = jumps(&gs, &ord);
    for p in 1..=n {
        let r = j[p];
        for a in p..r {
            for b in a + 1..r {
                check(adj[seq[a - 1]][seq[b - 1]], || format!("{gs:?} along {seq:?}: block of {p} not a clique"))?;
            }
        }
        for a in 1..p {
            for b in r..=n {
                check(!adj[seq[a - 1]][seq[b - 1]], || format!("{gs:?} along {seq:?}: block of {p} does not separate"))?;
            }
        }
    }
    Ok(())
}

/// `z(q)[i]` for `i = 0..=n + 1`.
fn iterates(j: &[usize], q: usize, n: usize) -> Vec<usize> {
    let mut z = vec![q];
    for _ in 0..=n {
        z.push(j[*z.last().unwrap()]);
    }
    z
}

pub fn interleave(n: usize, seed: u64) -> Result<(), String> {
    let (gs, ord, seq) = completed(n, seed);
    let j = jumps(&gs, &ord);
    for c in 1..=n {
        for d in c..=j[c].min(n) {
            let (zc, zd) = (iterates(&j, c, n), iterates(&j, d, n));
            for i in 0..=n {
                check(zc[i] <= zd[i] && zd[i] <= zc[i + 1], || format!("{gs:?} along {seq:?}: c={c} d={d} i={i}"))?;
            }
        }
    }
    Ok(())
}

pub fn z_cut(n: usize, seed: u64) -> Result<(), String> {
    let (gs, ord, seq) = completed(n, seed);
    let adj = adjacency(&gs);
    let j = jumps(&gs, &ord);
    let positions = |lo: usize, hi: usize| -> Vec<usize> { (lo..hi.min(n + 1)).map(|p| seq[p - 1]).collect() };
    let clique = |s: &[usize]| s.iter().all(|&a| s.iter().all(|&b| a == b || adj[a][b]));
    let apart = |s: &[usize], t: &[usize]| s.iter().all(|&a| t.iter().all(|&b| !adj[a][b]));
    for c in 1..=n {
        for d in c..=j[c].min(n) {
            let (zc, zd) = (iterates(&j, c, n), iterates(&j, d, n));
            let cs: Vec<Vec<usize>> = (0..=n).map(|i| positions(zc[i], zd[i])).collect();
            let ds: Vec<Vec<usize>> = (0..=n).map(|i| positions(zd[i], zc[i + 1])).collect();
            let tag = || format!("{gs:?} along {seq:?}: c={c} d={d}");
            let mut covered: Vec<usize> = cs.iter().chain(&ds).flatten().copied().collect();
            covered.sort_unstable();
            let mut expect: Vec<usize> = seq[c - 1..].to_vec();
            expect.sort_unstable();
            check(covered == expect, || format!("{}: not a partition", tag()))?;
            for i in 0..n {
                let cd: Vec<usize> = cs[i].iter().chain(&ds[i]).copied().collect();
                let dc: Vec<usize> = ds[i].iter().chain(&cs[i + 1]).copied().collect();
                check(clique(&cd) && clique(&dc), || format!("{}: i={i} not a clique", tag()))?;
            }
            for i in 0..=n {
                for jj in 0..=n {
                    if jj > i || i > jj + 1 {
                        check(apart(&cs[i], &ds[jj]), || format!("{}: C{i} touches D{jj}", tag()))?;
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn twins_consecutive(n: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq = shuffled(n, &mut rng);
    let g = Graph::from_edges(n, umbrella_edges(&seq, &mut rng)).unwrap();
    let canon = canonical_umbrella_ordering(&g, &TieBreaker::identity(n)).map_err(|e| format!("{g:?}: {e}"))?.sequence();
    let rev: Vec<usize> = seq.iter().rev().copied().collect();
    for order in [&seq, &rev, &canon] {
        for v in 0..n {
            let class: Vec<usize> = (0..n).filter(|&u| g.closed_neighbor_set(u) == g.closed_neighbor_set(v)).collect();
            let mut pos: Vec<usize> = class.iter().map(|&u| order.iter().position(|&x| x == u).unwrap()).collect();
            pos.sort_unstable();
            check(pos.last().unwrap() - pos[0] + 1 == pos.len(), || format!("{g:?} along {order:?}: twins {class:?} split"))?;
        }
    }
    Ok(())
}
