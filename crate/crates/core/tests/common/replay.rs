//! Rebuilds the branch a known optimal ordering belongs to and checks that the
//! enumerated families contain the objects read off that ordering.

use std::collections::BTreeSet;

use pic_core::dp::{augment, enumerate_chains, enumerate_jump_family, Chain, ChainFrame, JumpTuple, OFFSET};
use pic_core::expensive::{build_sandwich, compute_threshold, enumerate_guesses, ExpensiveGuess, Placement};
use pic_core::sections::{enumerate_sections, enumerate_twin_triples, BranchContext, SectionStats};
use pic_core::vset::VSet;
use pic_core::{minimal_completion, solve_bruteforce, Graph, SpicInstance, Status, TieBreaker, VertexOrdering, DEFAULT_CEILING};

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Coverage {
    pub branches: usize,
    pub sections: usize,
    pub jumps: usize,
    pub chains: usize,
    pub misses: Vec<String>,
}

impl Coverage {
    pub fn add(&mut self, o: Coverage) {
        self.branches += o.branches;
        self.sections += o.sections;
        self.jumps += o.jumps;
        self.chains += o.chains;
        self.misses.extend(o.misses);
    }
}

/// The expensive-vertex guess that `ord` induces for the completed graph `gs`.
pub fn guess_from_solution(gs: &Graph, g: &Graph, ord: &VertexOrdering, tau: usize) -> ExpensiveGuess {
    let mut entries = Vec::new();
    for v in 0..g.n() {
        if gs.degree(v) - g.degree(v) <= tau {
            continue;
        }
        let ps: Vec<usize> = gs.neighbors(v).iter().chain([&v]).map(|&x| ord.position(x).unwrap()).collect();
        let pl = Placement { pos: ord.position(v).unwrap(), left: *ps.iter().min().unwrap(), right: *ps.iter().max().unwrap() };
        entries.push((v, pl));
    }
    ExpensiveGuess { entries }
}

/// Checks branch, section, jump-tuple and chain coverage for the canonical
/// solution of `g` at budget `k`.
pub fn check(g: &Graph, k: usize) -> Coverage {
    let mut cov = Coverage::default();
    let orc = solve_bruteforce(&SpicInstance::trivial(g.clone(), k), &TieBreaker::identity(g.n())).unwrap();
    if orc.status == Status::No {
        return cov;
    }
    let tag = format!("{g:?} k={k}");
    let ord = orc.ordering.unwrap();
    let gs = g.with_completion(&orc.completion.unwrap());
    let tau = compute_threshold(k).tau;
    let guess = guess_from_solution(&gs, g, &ord, tau);
    cov.branches += 1;
    if !enumerate_guesses(g, k, tau, DEFAULT_CEILING).unwrap().contains(&guess) {
        cov.misses.push(format!("{tag}: guess {guess:?} not enumerated"));
    }
    let b = match build_sandwich(&guess, g, k) {
        Ok(b) => b,
        Err(e) => {
            cov.misses.push(format!("{tag}: correct guess rejected: {e}"));
            return cov;
        }
    };
    let nh = b.spic.n();
    if nh == 0 {
        return cov;
    }
    let free: Vec<usize> = (0..nh).map(|u| b.pos_map.iter().position(|&p| p == ord.position(b.w[u]).unwrap()).unwrap() + 1).collect();
    let sigma = VertexOrdering::from_pairs(nh, free.iter().copied().enumerate()).unwrap();
    let seq = sigma.sequence();

    let ctx = BranchContext::from_branch(&b, g);
    let triples = enumerate_twin_triples(&b.spic, &ctx, tau, DEFAULT_CEILING, &mut SectionStats::default()).unwrap();
    let secs = enumerate_sections(nh, &triples);
    let mut prefix = VSet::EMPTY;
    for j in 0..=nh {
        cov.sections += 1;
        if !secs.contains(&prefix) {
            cov.misses.push(format!("{tag}: prefix {prefix:?} of {seq:?} missing from sections"));
        }
        if j < nh {
            prefix = prefix.with(seq[j]);
        }
    }

    let aug = augment(&b.spic, seq[0], seq[nh - 1]);
    let saug = aug.sections(&secs);
    let n = aug.n();
    let fh = minimal_completion(&b.spic, &sigma).unwrap();
    let mut adj = aug.adj.clone();
    for &(u, v) in fh.iter() {
        adj[u + OFFSET] = adj[u + OFFSET].with(v + OFFSET);
        adj[v + OFFSET] = adj[v + OFFSET].with(u + OFFSET);
    }
    let mut aseq = vec![0, 1];
    aseq.extend(seq.iter().map(|&v| v + OFFSET));
    aseq.extend([nh + 2, nh + 3, nh + 4]);
    let jump = |p: usize| (p + 1..=n).find(|&q| !adj[aseq[p - 1]].contains(aseq[q - 1]));
    let ell = b.spic.budget();
    let light = (2 * ell).checked_div(tau).map_or(ell, |l| l.min(ell));
    let family = enumerate_jump_family(&aug, &saug, tau, light);

    let mut tuples: Vec<(usize, JumpTuple)> = Vec::new();
    for p in 1..=n - 2 {
        let r = jump(p).expect("every position before the last two has a jump");
        let block: Vec<usize> = aseq[p - 1..r - 1].to_vec();
        let incident = fh.iter().filter(|&&(u, v)| block.contains(&(u + OFFSET)) || block.contains(&(v + OFFSET))).count();
        let t = JumpTuple {
            before: aseq[..p - 1].iter().copied().collect(),
            block: block.iter().copied().collect(),
            seq: block.iter().map(|&v| v as u8).collect(),
        };
        let light_enough = if tau == 0 { true } else { incident * tau <= 2 * ell };
        if light_enough {
            cov.jumps += 1;
            if !family.contains(&t) {
                cov.misses.push(format!("{tag}: jump tuple at {p} missing ({incident} incident edges)"));
            }
        }
        if family.contains(&t) {
            tuples.push((p, t));
        }
    }

    if tau == 0 {
        return cov;
    }
    for w in tuples.windows(2) {
        let ((p1, j1), (p2, j2)) = (&w[0], &w[1]);
        let frame = ChainFrame::new(j1, j2, tau);
        let chains: BTreeSet<Chain> = enumerate_chains(&aug, &saug, &frame).into_iter().collect();
        for q in *p1..=frame.r2 {
            let mut c = Chain { z: vec![q as u8], u: vec![aseq[q - 1] as u8], b: vec![aseq[..q - 1].iter().copied().collect()] };
            let mut z = q;
            while z < *p2 {
                z = jump(z).unwrap();
                c.z.push(z as u8);
                c.u.push(aseq[z - 1] as u8);
                c.b.push(aseq[..z - 1].iter().copied().collect());
            }
            cov.chains += 1;
            if c.s() > tau || !chains.contains(&c) {
                cov.misses.push(format!("{tag}: chain from {q} between {p1} and {p2} missing: {:?}", c.z));
            }
        }
    }
    cov
}
