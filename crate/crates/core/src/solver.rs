//! The subexponential pipeline: expensive-vertex branches, sections, jump
//! tuples and the dynamic program, assembled per connected component.

use std::collections::BTreeSet;

use crate::dp::{augment, enumerate_jump_family, layer_one_dp, DpStats, MAX_VERTICES, OFFSET};
use crate::expensive::{compute_threshold, enumerate_branches, lift_solution, BranchInstance, Refused, DEFAULT_CEILING};
use crate::graph::{Completion, Graph, VertexOrdering};
use crate::oracle::{SolveResult, SolveStats};
use crate::sections::{enumerate_sections, enumerate_twin_triples, BranchContext, SectionStats};
use crate::vset::VSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FptConfig {
    /// Overrides the threshold derived from the budget.
    pub tau: Option<usize>,
    pub ceiling: usize,
    pub jobs: usize,
}

impl Default for FptConfig {
    fn default() -> Self {
        FptConfig { tau: None, ceiling: DEFAULT_CEILING, jobs: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FptError {
    #[error(transparent)]
    Refused(#[from] Refused),
    #[error("component with {n} vertices exceeds the supported {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// Cost and positions (indexed by vertex) of the best ordering found so far.
type Best = Option<(usize, Vec<usize>)>;

fn better(best: &mut Best, cand: (usize, Vec<usize>)) {
    if best.as_ref().is_none_or(|b| (cand.0, &cand.1) < (b.0, &b.1)) {
        *best = Some(cand);
    }
}

fn solve_branch(g: &Graph, b: &BranchInstance, budget: usize, tau: usize, ceiling: usize, stats: &mut SolveStats) -> Result<Best, Refused> {
    let nh = b.spic.n();
    let mut best = None;
    if nh == 0 {
        let (ord, f) = lift_solution(b, g, &VertexOrdering::from_pairs(0, []).expect("empty"));
        if f.len() <= budget {
            better(&mut best, (f.len(), ord.positions().to_vec()));
        }
        return Ok(best);
    }
    let ctx = BranchContext::from_branch(b, g);
    let mut sst = SectionStats::default();
    let triples = enumerate_twin_triples(&b.spic, &ctx, tau, ceiling, &mut sst)?;
    let secs = enumerate_sections(nh, &triples);
    stats.sections += secs.len() as u64;
    let ell = b.spic.budget();
    let light = (2 * ell).checked_div(tau).map_or(ell, |l| l.min(ell));
    let two = light < ell;
    let full = VSet::range(0, nh - 1);
    let mut dst = DpStats::default();
    for alpha in 0..nh {
        if !secs.contains(&VSet::single(alpha)) || !b.spic.is_allowed(alpha, 1) {
            continue;
        }
        for omega in 0..nh {
            if (omega == alpha && nh > 1) || !secs.contains(&full.without(omega)) || !b.spic.is_allowed(omega, nh) {
                continue;
            }
            let aug = augment(&b.spic, alpha, omega);
            let saug = aug.sections(&secs);
            let jumps: Vec<_> = enumerate_jump_family(&aug, &saug, tau, light).into_iter().collect();
            dst.jump_tuples += jumps.len() as u64;
            let Some(c) = layer_one_dp(&aug, &jumps, &saug, tau, two, &mut dst) else { continue };
            let ord_h = VertexOrdering::from_pairs(nh, (0..nh).map(|v| (v, c.map[v + OFFSET] as usize - OFFSET))).expect("bijection");
            let (ord, f) = lift_solution(b, g, &ord_h);
            if f.len() <= budget {
                better(&mut best, (f.len(), ord.positions().to_vec()));
            }
        }
    }
    stats.jump_tuples += dst.jump_tuples;
    stats.chains += dst.chains;
    stats.dp_states += dst.dp_states;
    Ok(best)
}

/// Best ordering of cost at most `budget` for a connected graph.
fn solve_budget(g: &Graph, budget: usize, cfg: &FptConfig, stats: &mut SolveStats) -> Result<Best, Refused> {
    let tau = cfg.tau.unwrap_or_else(|| compute_threshold(budget).tau);
    let branches: Vec<BranchInstance> = enumerate_branches(g, budget, tau, cfg.ceiling)?.collect();
    stats.branches_enumerated += branches.len() as u64;
    let jobs = cfg.jobs.max(1).min(branches.len().max(1));
    let results: Vec<(Result<Best, Refused>, SolveStats)> = if jobs == 1 {
        branches
            .iter()
            .map(|b| {
                let mut st = SolveStats::default();
                (solve_branch(g, b, budget, tau, cfg.ceiling, &mut st), st)
            })
            .collect()
    } else {
        let mut slots: Vec<Option<(Result<Best, Refused>, SolveStats)>> = vec![None; branches.len()];
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    let branches = &branches;
                    s.spawn(move || {
                        (w..branches.len())
                            .step_by(jobs)
                            .map(|i| {
                                let mut st = SolveStats::default();
                                (i, (solve_branch(g, &branches[i], budget, tau, cfg.ceiling, &mut st), st))
                            })
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (i, r) in h.join().expect("worker panicked") {
                    slots[i] = Some(r);
                }
            }
        });
        slots.into_iter().map(|x| x.expect("every branch solved")).collect()
    };
    let mut best = None;
    for (r, st) in results {
        stats.add(&st);
        if let Some(c) = r? {
            better(&mut best, c);
        }
    }
    Ok(best)
}

/// Minimum-cost canonical ordering of a connected graph, trying budgets
/// `0..=k` in turn.
fn solve_component(g: &Graph, k: usize, cfg: &FptConfig, stats: &mut SolveStats) -> Result<Best, FptError> {
    if g.n() > MAX_VERTICES {
        return Err(FptError::TooLarge { n: g.n(), limit: MAX_VERTICES });
    }
    if g.n() <= 1 {
        return Ok(Some((0, vec![1; g.n()])));
    }
    for budget in 0..=k {
        if let Some(b) = solve_budget(g, budget, cfg, stats)? {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// Solves proper interval completion with budget `k` through the branching
/// and dynamic-programming pipeline. Components are solved independently and
/// laid out in order of their smallest vertex.
pub fn solve_fpt(g: &Graph, k: usize, cfg: &FptConfig) -> Result<SolveResult, FptError> {
    let n = g.n();
    let mut stats = SolveStats::default();
    let mut pos = vec![0usize; n];
    let mut offset = 0;
    let mut total = 0;
    let mut pairs = BTreeSet::new();
    for comp in g.components() {
        let h = g.induced_subgraph(&comp);
        let Some((c, local)) = solve_component(&h, k, cfg, &mut stats)? else {
            return Ok(SolveResult::no(stats));
        };
        total += c;
        if total > k {
            return Ok(SolveResult::no(stats));
        }
        for (i, &v) in comp.iter().enumerate() {
            pos[v] = offset + local[i];
        }
        offset += comp.len();
    }
    let ord = VertexOrdering::from_position_vec(pos).expect("bijection");
    let inst = crate::spic::SpicInstance::trivial(g.clone(), k);
    pairs.extend(crate::spic::minimal_completion(&inst, &ord).expect("trivial sandwich").iter().copied());
    let f = Completion::new(g, pairs).expect("non-edges");
    debug_assert_eq!(f.len(), total);
    Ok(SolveResult::yes(f, ord, stats))
}
