//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::properties::{config, CASES, PROPERTIES};
use common::replay::{check, Coverage};
use pic_core::expensive::{compute_threshold, enumerate_guesses};
use pic_core::*;
use proptest::prelude::*;
use proptest::test_runner::{TestCaseError, TestRunner};

const BUDGETS: std::ops::RangeInclusive<usize> = 0..=5;
const TIME_LIMIT: Duration = Duration::from_secs(30 * 60);

type Outcome = Result<String, String>;

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let graphs = common::connected_graphs_up_to(7);
    let at7 = graphs.iter().filter(|g| g.n() == 7).count();
    let mut runs = 0;
    let mut bad = Vec::new();
    for g in &graphs {
        let tb = TieBreaker::identity(g.n());
        let (cost, pos) = common::exhaustive(g);
        for k in BUDGETS {
            let orc = solve_bruteforce(&SpicInstance::trivial(g.clone(), k), &tb).map_err(|e| e.to_string())?;
            let fpt = solve_fpt(g, k, &FptConfig::default()).map_err(|e| format!("{g:?} k={k}: {e}"))?;
            runs += 1;
            let expected = if cost <= k { (Status::Yes, Some(cost)) } else { (Status::No, None) };
            if (orc.status, orc.cost) != expected || (cost <= k && orc.ordering.as_ref().unwrap().positions() != &pos[..]) {
                bad.push(format!("oracle disagrees with exhaustive search on {g:?} k={k}"));
            }
            if (fpt.status, fpt.cost) != (orc.status, orc.cost) || fpt.ordering != orc.ordering {
                bad.push(format!("{g:?} k={k}: fpt {:?} {:?} vs oracle {:?} {:?}", fpt.status, fpt.ordering, orc.status, orc.ordering));
            }
        }
    }
    let took = start.elapsed();
    if !bad.is_empty() {
        return Err(format!("{} mismatches, first: {}", bad.len(), bad[0]));
    }
    if took > TIME_LIMIT {
        return Err(format!("took {took:.1?}, over {TIME_LIMIT:?}"));
    }
    Ok(format!("{} connected graphs ({at7} on 7 vertices), {runs} runs, 0 mismatches, {:.1?}", graphs.len(), took))
}

fn forbidden_costs() -> Outcome {
    let cases = [
        ("C4", Graph::cycle(4), 1),
        ("claw", common::named("claw"), 1),
        ("C5", Graph::cycle(5), 2),
        ("net", common::named("net"), 2),
        ("tent", common::named("tent"), 2),
    ];
    let mut parts = Vec::new();
    for (name, g, cost) in cases {
        let tb = TieBreaker::identity(g.n());
        for k in [cost - 1, cost, 5] {
            let modes = [
                ("fpt", solve_fpt(&g, k, &FptConfig::default()).map_err(|e| e.to_string())?),
                ("baseline", solve_baseline(&g, k, &tb)),
                ("oracle", solve_bruteforce(&SpicInstance::trivial(g.clone(), k), &tb).map_err(|e| e.to_string())?),
            ];
            for (mode, r) in modes {
                let expected = if k >= cost { (Status::Yes, Some(cost)) } else { (Status::No, None) };
                if (r.status, r.cost) != expected {
                    return Err(format!("{name} k={k} {mode}: {:?} {:?}", r.status, r.cost));
                }
                if let Some(f) = &r.completion {
                    if !verify_solution(&g, &f.to_vec(), k).map_err(|e| e.to_string())? {
                        return Err(format!("{name} k={k} {mode}: completion fails verification"));
                    }
                }
            }
        }
        parts.push(format!("{name}={cost}"));
    }
    Ok(format!("{} in fpt, baseline and oracle", parts.join(" ")))
}

fn property_suite() -> Outcome {
    let mut names = Vec::new();
    for &(name, prop) in PROPERTIES {
        let mut runner = TestRunner::new(config());
        runner
            .run(&(1usize..=9, any::<u64>()), |(n, seed)| prop(n, seed).map_err(TestCaseError::fail))
            .map_err(|e| format!("{name}: {e}"))?;
        names.push(name);
    }
    Ok(format!("{} properties x {CASES} seeded cases, 0 violations", names.len()))
}

fn coverage() -> Outcome {
    let start = Instant::now();
    let mut cov = Coverage::default();
    for g in common::connected_graphs_up_to(7) {
        for k in BUDGETS {
            cov.add(check(&g, k));
        }
    }
    if let Some(m) = cov.misses.first() {
        return Err(format!("{} misses, first: {m}", cov.misses.len()));
    }
    Ok(format!(
        "{} correct branches: {} prefixes in S, {} light jump tuples in J, {} consistent chains in C, 0 misses, {:.1?}",
        cov.branches,
        cov.sections,
        cov.jumps,
        cov.chains,
        start.elapsed()
    ))
}

fn counters(s: &SolveStats) -> [u64; 5] {
    [s.branches_enumerated, s.sections, s.jump_tuples, s.chains, s.dp_states]
}

fn stats_and_ceiling() -> Outcome {
    let family = [
        ("C4", Graph::cycle(4)),
        ("C5", Graph::cycle(5)),
        ("C6", Graph::cycle(6)),
        ("C8", Graph::cycle(8)),
        ("claw", common::named("claw")),
        ("net", common::named("net")),
        ("tent", common::named("tent")),
        ("star6", Graph::from_edges(7, (1..=6).map(|v| (0, v))).unwrap()),
    ];
    let mut totals = [0u64; 5];
    for (name, g) in &family {
        let mut prev = [0u64; 5];
        for k in BUDGETS {
            let c = counters(&solve_fpt(g, k, &FptConfig::default()).map_err(|e| e.to_string())?.stats);
            if prev.iter().zip(&c).any(|(a, b)| a > b) {
                return Err(format!("{name}: counters {prev:?} drop to {c:?} at k={k}"));
            }
            prev = c;
        }
        for (t, c) in totals.iter_mut().zip(prev) {
            *t += c;
        }
    }
    if totals.contains(&0) {
        return Err(format!("some counter never moves: {totals:?}"));
    }
    let mut refusals = 0;
    for (name, g) in &family {
        for k in 1..=4 {
            let tau = compute_threshold(k).tau;
            let all = enumerate_guesses(g, k, tau, usize::MAX).map_err(|e| e.to_string())?.len();
            if all < 2 {
                continue;
            }
            match enumerate_guesses(g, k, tau, all - 1) {
                Err(r) if r.stage == Stage::Guesses && r.count == all && r.limit == all - 1 => refusals += 1,
                other => return Err(format!("{name} k={k}: ceiling {} gave {:?}", all - 1, other.map(|v| v.len()))),
            }
            if enumerate_guesses(g, k, tau, all).is_err() {
                return Err(format!("{name} k={k}: refused at ceiling {all}"));
            }
        }
        let mut accepted = false;
        for e in 0..16 {
            match solve_fpt(g, 4, &FptConfig { ceiling: 1 << e, ..FptConfig::default() }) {
                Ok(_) => accepted = true,
                Err(FptError::Refused(_)) if !accepted => refusals += 1,
                Err(err) => return Err(format!("{name}: ceiling {} gave {err}", 1 << e)),
            }
        }
        if !accepted {
            return Err(format!("{name}: refused at every ceiling"));
        }
    }
    Ok(format!("counters non-decreasing over k=0..5 on {} graphs, totals {totals:?}; {refusals} refusals all below the threshold", family.len()))
}

fn determinism() -> Outcome {
    let mut graphs: Vec<Graph> = vec![Graph::cycle(6), common::named("net"), common::named("tent")];
    graphs.extend(common::connected_graphs_up_to(7).into_iter().filter(|g| g.n() == 7).step_by(40));
    let mut runs = 0;
    for g in &graphs {
        for k in [2, 5] {
            let mut seen: Vec<String> = Vec::new();
            for jobs in [1, 4] {
                for _ in 0..3 {
                    let r = solve_fpt(g, k, &FptConfig { jobs, ..FptConfig::default() }).map_err(|e| e.to_string())?;
                    seen.push(format!("{r:?}"));
                    runs += 1;
                }
            }
            if seen.windows(2).any(|w| w[0] != w[1]) {
                return Err(format!("{g:?} k={k}: outputs differ"));
            }
        }
    }
    Ok(format!("{runs} runs on {} graphs: 3 repeats x jobs 1 and 4, byte-identical", graphs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("oracle equivalence", oracle_equivalence),
        ("forbidden-structure costs", forbidden_costs),
        ("structural property suite", property_suite),
        ("family coverage", coverage),
        ("stats counters and ceiling", stats_and_ceiling),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(msg) => println!("PASS {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
