use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use pic_core::io::parse_edge_list;
use pic_core::oracle::OracleError;
use pic_core::{
    has_umbrella_property, recognize, solve_baseline, solve_bruteforce, solve_fpt, verify_solution, FptConfig, Graph,
    SolveResult, SolveStats, SpicInstance, Status, TieBreaker, VertexOrdering, DEFAULT_CEILING,
};
use serde::{Deserialize, Serialize};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_REFUSED: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "pic", version, about = "Proper interval completion solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a minimum completion of size at most the budget.
    Solve(SolveArgs),
    /// Test whether a graph is proper interval.
    Recognize {
        #[arg(long)]
        input: PathBuf,
    },
    /// Re-check a result document against its graph.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        result: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Fpt,
    Baseline,
    Oracle,
}

#[derive(clap::Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    budget: usize,
    #[arg(long, value_enum, default_value = "fpt")]
    mode: Mode,
    /// Override the expensive-vertex threshold.
    #[arg(long)]
    tau: Option<usize>,
    /// Enumeration ceiling; larger families are refused.
    #[arg(long, default_value_t = DEFAULT_CEILING)]
    ceiling: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Suppress the notice that no kernelization is applied.
    #[arg(long)]
    assume_kernelized: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum DocStatus {
    Yes,
    No,
    Refused,
}

#[derive(Debug, Default, Clone, Serialize, Deserialize)]
struct DocStats {
    branches_enumerated: u64,
    sections: u64,
    jump_tuples: u64,
    chains: u64,
    dp_states: u64,
    wall_time_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ResultDocument {
    status: DocStatus,
    cost: Option<usize>,
    added_edges: Vec<[usize; 2]>,
    ordering: Vec<usize>,
    stats: DocStats,
}

impl ResultDocument {
    fn refused(stats: SolveStats) -> Self {
        ResultDocument { status: DocStatus::Refused, cost: None, added_edges: Vec::new(), ordering: Vec::new(), stats: doc_stats(&stats) }
    }

    fn from_result(r: &SolveResult) -> Self {
        let mut added_edges: Vec<[usize; 2]> =
            r.completion.iter().flat_map(|c| c.iter()).map(|&(u, v)| [u.min(v), u.max(v)]).collect();
        added_edges.sort_unstable();
        ResultDocument {
            status: match r.status {
                Status::Yes => DocStatus::Yes,
                Status::No => DocStatus::No,
            },
            cost: r.cost,
            added_edges,
            ordering: r.ordering.as_ref().map(VertexOrdering::sequence).unwrap_or_default(),
            stats: doc_stats(&r.stats),
        }
    }

    fn exit_code(&self) -> u8 {
        match self.status {
            DocStatus::Yes => EXIT_YES,
            DocStatus::No => EXIT_NO,
            DocStatus::Refused => EXIT_REFUSED,
        }
    }
}

fn doc_stats(s: &SolveStats) -> DocStats {
    DocStats {
        branches_enumerated: s.branches_enumerated,
        sections: s.sections,
        jump_tuples: s.jump_tuples,
        chains: s.chains,
        dp_states: s.dp_states,
        wall_time_ms: 0,
    }
}

#[derive(Serialize)]
struct RecognizeDocument {
    proper_interval: bool,
    ordering: Vec<usize>,
    witness: Option<pic_core::ForbiddenStructure>,
}

#[derive(Serialize)]
struct VerifyDocument {
    valid: bool,
    status: DocStatus,
    detail: String,
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(text: &str, output: Option<&Path>) -> anyhow::Result<()> {
    match output {
        Some(p) => std::fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn solve(args: &SolveArgs) -> anyhow::Result<u8> {
    let g = read_graph(&args.input)?;
    if args.jobs == 0 || args.ceiling == 0 {
        bail!("--jobs and --ceiling must be at least 1");
    }
    let start = Instant::now();
    let mut doc = match args.mode {
        Mode::Fpt => {
            if !args.assume_kernelized {
                eprintln!("notice: no kernelization is applied, the graph is solved as given");
            }
            let cfg = FptConfig { tau: args.tau, ceiling: args.ceiling, jobs: args.jobs };
            match solve_fpt(&g, args.budget, &cfg) {
                Ok(r) => ResultDocument::from_result(&r),
                Err(e) => {
                    eprintln!("refused: {e}");
                    ResultDocument::refused(SolveStats::default())
                }
            }
        }
        Mode::Baseline => ResultDocument::from_result(&solve_baseline(&g, args.budget, &TieBreaker::identity(g.n()))),
        Mode::Oracle => match solve_bruteforce(&SpicInstance::trivial(g.clone(), args.budget), &TieBreaker::identity(g.n())) {
            Ok(r) => ResultDocument::from_result(&r),
            Err(e @ OracleError::TooLarge { .. }) => {
                eprintln!("refused: {e}");
                ResultDocument::refused(SolveStats::default())
            }
            Err(e) => return Err(e.into()),
        },
    };
    doc.stats.wall_time_ms = start.elapsed().as_millis() as u64;
    emit(&serde_json::to_string_pretty(&doc)?, args.output.as_deref())?;
    Ok(doc.exit_code())
}

fn run_recognize(input: &Path) -> anyhow::Result<u8> {
    let g = read_graph(input)?;
    let r = recognize(&g, &TieBreaker::identity(g.n()));
    let doc = RecognizeDocument {
        proper_interval: r.is_proper_interval,
        ordering: r.canonical_ordering.as_ref().map(VertexOrdering::sequence).unwrap_or_default(),
        witness: r.witness,
    };
    emit(&serde_json::to_string_pretty(&doc)?, None)?;
    Ok(if doc.proper_interval { EXIT_YES } else { EXIT_NO })
}

fn check_document(g: &Graph, doc: &ResultDocument) -> anyhow::Result<Result<(), String>> {
    if doc.status != DocStatus::Yes {
        if !doc.added_edges.is_empty() || !doc.ordering.is_empty() {
            return Ok(Err("non-yes document carries a solution".into()));
        }
        return Ok(Ok(()));
    }
    let pairs: Vec<(usize, usize)> = doc.added_edges.iter().map(|e| (e[0], e[1])).collect();
    if doc.cost != Some(pairs.len()) {
        return Ok(Err(format!("cost {:?} does not match {} added edges", doc.cost, pairs.len())));
    }
    match verify_solution(g, &pairs, pairs.len()) {
        Ok(true) => {}
        Ok(false) => return Ok(Err("completed graph is not proper interval".into())),
        Err(e) => return Ok(Err(e.to_string())),
    }
    let Ok(ord) = VertexOrdering::from_sequence(&doc.ordering) else {
        return Ok(Err("ordering is not a permutation".into()));
    };
    let f = pic_core::Completion::new(g, pairs.iter().copied())?;
    if ord.len() != g.n() || !has_umbrella_property(&g.with_completion(&f), &ord) {
        return Ok(Err("ordering is not an umbrella ordering of the completed graph".into()));
    }
    Ok(Ok(()))
}

fn run_verify(input: &Path, result: &Path) -> anyhow::Result<u8> {
    let g = read_graph(input)?;
    let text = std::fs::read_to_string(result).with_context(|| format!("reading {}", result.display()))?;
    let doc: ResultDocument = serde_json::from_str(&text).with_context(|| format!("parsing {}", result.display()))?;
    let outcome = check_document(&g, &doc)?;
    let out = VerifyDocument {
        valid: outcome.is_ok(),
        status: doc.status,
        detail: outcome.err().unwrap_or_else(|| "ok".into()),
    };
    emit(&serde_json::to_string_pretty(&out)?, None)?;
    Ok(if out.valid { EXIT_YES } else { EXIT_NO })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let r = match &cli.command {
        Command::Solve(a) => solve(a),
        Command::Recognize { input } => run_recognize(input),
        Command::Verify { input, result } => run_verify(input, result),
    };
    match r {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
