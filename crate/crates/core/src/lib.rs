//! Proper interval completion: add at most `k` edges to a graph so that it
//! becomes a proper interval graph.
//!
//! Besides exact reference solvers the crate implements a subexponential
//! pipeline: branching on expensive vertices, enumeration of sections and a
//! two-layer dynamic program over vertex orderings.

pub mod bitset;
pub mod dp;
pub mod expensive;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod recognition;
pub mod sections;
pub mod solver;
pub mod spic;
pub mod vset;

pub use graph::{has_umbrella_property, induced_graph, lex_compare, Completion, Graph, GraphError, TieBreaker, VertexOrdering};
pub use oracle::{solve_baseline, solve_bruteforce, verify_solution, SolveResult, SolveStats, Status};
pub use recognition::{canonical_umbrella_ordering, find_forbidden_structure, recognize, ForbiddenKind, ForbiddenStructure};
pub use spic::{cost, is_feasible, lex_min_matching, minimal_completion, SpicInstance};
pub use expensive::{Refused, Stage, DEFAULT_CEILING};
pub use solver::{solve_fpt, FptConfig, FptError};
