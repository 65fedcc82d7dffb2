//! Plain-text edge lists: a header line `n m` followed by `m` lines `u v` with `u < v`.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: pair {u} {v} must satisfy u < v < n")]
    BadPair { line: usize, u: usize, v: usize },
    #[error("line {line}: duplicate pair {u} {v}")]
    Duplicate { line: usize, u: usize, v: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| ParseError::Syntax { line, msg: format!("not a non-negative integer: {t:?}") })
        })
        .collect()
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let h = numbers(hl, header)?;
    if h.len() != 2 {
        return Err(ParseError::Syntax { line: hl, msg: "header must be `n m`".into() });
    }
    let (n, m) = (h[0], h[1]);
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for (ln, l) in lines {
        let nums = numbers(ln, l)?;
        if nums.len() != 2 {
            return Err(ParseError::Syntax { line: ln, msg: "edge line must be `u v`".into() });
        }
        let (u, v) = (nums[0], nums[1]);
        if u >= v || v >= n {
            return Err(ParseError::BadPair { line: ln, u, v });
        }
        if !seen.insert((u, v)) {
            return Err(ParseError::Duplicate { line: ln, u, v });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount { expected: m, found: edges.len() });
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}
