//! Line-oriented text format for graphs.
//!
//! ```text
//! c <comment>
//! p dg <n> <m>        (or `p ug <n> <m>`)
//! a <tail> <head>     (directed, 1-indexed; `e <u> <v>` for undirected)
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Arc, ArcSet, DirectedGraph, UndirectedGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Directed,
    Undirected,
}

/// A parsed graph file before the graph invariants are checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphText {
    pub kind: GraphKind,
    pub vertex_count: usize,
    /// 0-indexed endpoints with the line they came from.
    pub pairs: Vec<(usize, Vertex, Vertex)>,
    /// Comment bodies (text after `c `) with their line numbers.
    pub comments: Vec<(usize, String)>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_count(line: usize, tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("{what} `{tok}` is not a non-negative integer")))
}

fn parse_endpoint(line: usize, tok: Option<&str>, n: usize) -> Result<Vertex> {
    let v = parse_count(line, tok, "vertex")?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("vertex {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

pub fn parse_graph_text(text: &str) -> Result<GraphText> {
    let mut header: Option<(GraphKind, usize, usize)> = None;
    let mut pairs = Vec::new();
    let mut comments = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed == "c" {
            comments.push((line, String::new()));
            continue;
        }
        if let Some(body) = trimmed.strip_prefix("c ") {
            comments.push((line, body.trim().to_string()));
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        match toks.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate `p` header"));
                }
                let kind = match toks.next() {
                    Some("dg") => GraphKind::Directed,
                    Some("ug") => GraphKind::Undirected,
                    other => {
                        return Err(parse_err(
                            line,
                            format!("expected `dg` or `ug`, found {:?}", other.unwrap_or("")),
                        ))
                    }
                };
                let n = parse_count(line, toks.next(), "vertex count")?;
                let m = parse_count(line, toks.next(), "arc count")?;
                header = Some((kind, n, m));
            }
            Some(tag @ ("a" | "e")) => {
                let (kind, n, _) = header.ok_or_else(|| parse_err(line, "arc before `p` header"))?;
                let expected = if kind == GraphKind::Directed { "a" } else { "e" };
                if tag != expected {
                    return Err(parse_err(line, format!("`{tag}` line in a `{expected}` graph")));
                }
                let u = parse_endpoint(line, toks.next(), n)?;
                let v = parse_endpoint(line, toks.next(), n)?;
                pairs.push((line, u, v));
            }
            Some(other) => return Err(parse_err(line, format!("unknown line type `{other}`"))),
            None => unreachable!(),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let (kind, vertex_count, m) = header.ok_or_else(|| parse_err(0, "missing `p` header"))?;
    if pairs.len() != m {
        return Err(parse_err(
            text.lines().count(),
            format!("header announces {m} arcs, found {}", pairs.len()),
        ));
    }
    Ok(GraphText {
        kind,
        vertex_count,
        pairs,
        comments,
    })
}

/// Re-raises a graph invariant failure at the line of the offending pair.
fn locate(parsed: &GraphText, err: Error) -> Error {
    let bad_line = |u: Vertex, v: Vertex| {
        parsed
            .pairs
            .iter()
            .rev()
            .find(|&&(_, a, b)| (a, b) == (u, v) || (parsed.kind == GraphKind::Undirected && (b, a) == (u, v)))
            .map(|&(l, _, _)| l)
            .unwrap_or(0)
    };
    match err {
        Error::Loop(v) => parse_err(bad_line(v, v), format!("loop at vertex {}", v + 1)),
        Error::DuplicateArc(a) => parse_err(
            bad_line(a.tail, a.head),
            format!("duplicate arc {} {}", a.tail + 1, a.head + 1),
        ),
        Error::DuplicateEdge(u, v) => parse_err(bad_line(u, v), format!("duplicate edge {} {}", u + 1, v + 1)),
        other => other,
    }
}

impl GraphText {
    pub fn to_directed(&self) -> Result<DirectedGraph> {
        if self.kind != GraphKind::Directed {
            return Err(parse_err(0, "expected a directed (`p dg`) graph"));
        }
        DirectedGraph::new(self.vertex_count, self.pairs.iter().map(|&(_, u, v)| Arc::new(u, v)))
            .map_err(|e| locate(self, e))
    }

    pub fn to_undirected(&self) -> Result<UndirectedGraph> {
        if self.kind != GraphKind::Undirected {
            return Err(parse_err(0, "expected an undirected (`p ug`) graph"));
        }
        UndirectedGraph::new(self.vertex_count, self.pairs.iter().map(|&(_, u, v)| (u, v))).map_err(|e| locate(self, e))
    }
}

pub fn parse_directed(text: &str) -> Result<DirectedGraph> {
    parse_graph_text(text)?.to_directed()
}

pub fn parse_undirected(text: &str) -> Result<UndirectedGraph> {
    parse_graph_text(text)?.to_undirected()
}

pub fn write_directed(g: &DirectedGraph) -> String {
    let mut out = format!("p dg {} {}\n", g.vertex_count(), g.arc_count());
    for a in g.arcs() {
        let _ = writeln!(out, "a {} {}", a.tail + 1, a.head + 1);
    }
    out
}

pub fn write_undirected(g: &UndirectedGraph) -> String {
    let mut out = format!("p ug {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Arc list file: `a <tail> <head>` lines (1-indexed) plus comments, no header.
pub fn parse_arc_set(text: &str) -> Result<ArcSet> {
    let mut set = ArcSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed == "c" || trimmed.starts_with("c ") {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        if toks.next() != Some("a") {
            return Err(parse_err(line, "expected `a <tail> <head>`"));
        }
        let u = parse_endpoint(line, toks.next(), usize::MAX)?;
        let v = parse_endpoint(line, toks.next(), usize::MAX)?;
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
        if !set.insert(Arc::new(u, v)) {
            return Err(parse_err(line, format!("duplicate arc {} {}", u + 1, v + 1)));
        }
    }
    Ok(set)
}

pub fn write_arc_set(f: &ArcSet) -> String {
    f.iter().map(|a| format!("a {} {}\n", a.tail + 1, a.head + 1)).collect()
}
