//! Plain-text graph records.
//!
//! ```text
//! n 3 e 1 a 1
//! A 0 1
//! E 1 2
//! ```
//!
//! The header gives the vertex count and the number of edge and arc lines.
//! Each edge is written `E u v` with `u < v`, each arc `A tail head`.
//! Body lines are sorted as byte strings, so every labeled graph has exactly
//! one serialization. Vertices are 0-indexed. A file may hold several
//! records back to back.

use thiserror::Error;

use crate::graph::{GraphError, MixedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: expected header `n <n> e <edges> a <arcs>`")]
    BadHeader { line: usize },
    #[error("line {line}: malformed entry `{text}`")]
    BadEntry { line: usize, text: String },
    #[error("line {line}: edge written as `E {u} {v}` must have u < v")]
    UnorderedEdge { line: usize, u: usize, v: usize },
    #[error("record starting at line {line} declares {declared} {kind} but has {found}")]
    CountMismatch {
        line: usize,
        kind: &'static str,
        declared: usize,
        found: usize,
    },
    #[error("record starting at line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("no graph record found")]
    Empty,
}

pub fn to_text(x: &MixedGraph) -> String {
    let mut lines: Vec<String> = x
        .edges()
        .map(|(u, v)| format!("E {u} {v}"))
        .chain(x.arcs().map(|(u, v)| format!("A {u} {v}")))
        .collect();
    lines.sort_unstable();
    let mut out = format!("n {} e {} a {}\n", x.order(), x.edge_count(), x.arc_count());
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Parses exactly one record.
pub fn parse(text: &str) -> Result<MixedGraph, FormatError> {
    let mut graphs = parse_records(text)?;
    match graphs.len() {
        0 => Err(FormatError::Empty),
        1 => Ok(graphs.pop().unwrap()),
        _ => Err(FormatError::BadHeader {
            line: record_start_of_second(text),
        }),
    }
}

fn record_start_of_second(text: &str) -> usize {
    text.lines()
        .enumerate()
        .filter(|(_, l)| l.trim_start().starts_with('n'))
        .nth(1)
        .map_or(0, |(i, _)| i + 1)
}

fn parse_header(fields: &[&str]) -> Option<(usize, usize, usize)> {
    match fields {
        ["n", n, "e", e, "a", a] => Some((n.parse().ok()?, e.parse().ok()?, a.parse().ok()?)),
        _ => None,
    }
}

/// Parses every record in `text`. Blank lines are ignored.
pub fn parse_records(text: &str) -> Result<Vec<MixedGraph>, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .peekable();
    let mut graphs = Vec::new();

    while let Some((start, header)) = lines.next() {
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (n, edge_total, arc_total) =
            parse_header(&fields).ok_or(FormatError::BadHeader { line: start })?;
        let mut edges = Vec::with_capacity(edge_total);
        let mut arcs = Vec::with_capacity(arc_total);

        while let Some(&(line, body)) = lines.peek() {
            let fields: Vec<&str> = body.split_whitespace().collect();
            let entry = match fields.as_slice() {
                [kind @ ("E" | "A"), u, v] => match (u.parse::<usize>(), v.parse::<usize>()) {
                    (Ok(u), Ok(v)) => Some((*kind, u, v)),
                    _ => None,
                },
                ["n", ..] => break,
                _ => None,
            };
            let (kind, u, v) = entry.ok_or_else(|| FormatError::BadEntry {
                line,
                text: body.to_string(),
            })?;
            if kind == "E" {
                if u >= v {
                    return Err(FormatError::UnorderedEdge { line, u, v });
                }
                edges.push((u, v));
            } else {
                arcs.push((u, v));
            }
            lines.next();
        }

        for (kind, declared, found) in [
            ("edges", edge_total, edges.len()),
            ("arcs", arc_total, arcs.len()),
        ] {
            if declared != found {
                return Err(FormatError::CountMismatch {
                    line: start,
                    kind,
                    declared,
                    found,
                });
            }
        }
        let g = MixedGraph::new(n, edges, arcs).map_err(|source| FormatError::Invalid {
            line: start,
            source,
        })?;
        graphs.push(g);
    }
    Ok(graphs)
}
