//! Edge-list text format: a header `n m W`, then `m` lines `u v w`.
//!
//! Ids are 0-based. Blank lines and everything after `#` are ignored. A
//! header of just `n m` takes `W` from the largest weight seen.

use std::fmt::Write as _;
use std::io::BufRead;

use distlab_core::{GraphError, WeightedGraph};

#[derive(Debug, thiserror::Error)]
pub enum EdgeListError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<u64>, EdgeListError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>().map_err(|_| EdgeListError::Parse { line: lineno, msg: format!("not a number: {tok:?}") })
        })
        .collect()
}

fn parse_err(line: usize, msg: impl Into<String>) -> EdgeListError {
    EdgeListError::Parse { line, msg: msg.into() }
}

pub fn read_edge_list(reader: impl BufRead) -> Result<WeightedGraph, EdgeListError> {
    let mut header: Option<(usize, usize, Option<u32>)> = None;
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let nums = numbers(body, lineno)?;
        match header {
            None => {
                let (n, m, w) = match nums[..] {
                    [n, m] => (n, m, None),
                    [n, m, w] => (n, m, Some(u32::try_from(w).map_err(|_| parse_err(lineno, "W too large"))?)),
                    _ => return Err(parse_err(lineno, "header must be `n m W`")),
                };
                let n = usize::try_from(n).map_err(|_| parse_err(lineno, "n too large"))?;
                let m = usize::try_from(m).map_err(|_| parse_err(lineno, "m too large"))?;
                header = Some((n, m, w));
            }
            Some(_) => {
                let [u, v, w] = nums[..] else {
                    return Err(parse_err(lineno, "edge lines must be `u v w`"));
                };
                let w = u32::try_from(w).map_err(|_| parse_err(lineno, "weight too large"))?;
                edges.push((u as usize, v as usize, w));
            }
        }
    }
    let (n, m, w) = header.ok_or(EdgeListError::MissingHeader)?;
    if edges.len() != m {
        return Err(EdgeListError::EdgeCount { expected: m, found: edges.len() });
    }
    Ok(match w {
        Some(w) => WeightedGraph::new(n, w, edges)?,
        None => WeightedGraph::with_inferred_weight(n, edges)?,
    })
}

pub fn parse_edge_list(text: &str) -> Result<WeightedGraph, EdgeListError> {
    read_edge_list(text.as_bytes())
}

pub fn write_edge_list(g: &WeightedGraph) -> String {
    let mut out = format!("{} {} {}\n", g.n(), g.m(), g.max_weight());
    for &(u, v, w) in g.edges() {
        let _ = writeln!(out, "{u} {v} {w}");
    }
    out
}
