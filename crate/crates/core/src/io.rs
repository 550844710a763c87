//! The shared edge-list text format.
//!
//! ```text
//! # comment
//! n m [bipartite a b]
//! u v        (m lines, 0-indexed, u < v)
//! ```
//!
//! With `bipartite a b` the first `a` vertices form one class and the next
//! `b` the other; every edge must cross.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, GraphBuilder};

/// Header and edges of an edge-list file, before any simplicity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawEdgeList {
    pub n: usize,
    pub bipartite: Option<(usize, usize)>,
    /// In file order; may repeat.
    pub edges: Vec<Edge>,
}

/// Parses the format checking syntax, ranges, `u < v` and the edge count,
/// but not duplicates.
pub fn parse_raw_edge_list(text: &str, source: &str) -> Result<RawEdgeList> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(source, 0, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let num = |s: &str, what: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::parse(source, hline, format!("bad {what} `{s}`")))
    };
    let (n, m, bipartite) = match fields.as_slice() {
        [n, m] => (num(n, "vertex count")?, num(m, "edge count")?, None),
        [n, m, "bipartite", a, b] => {
            let (n, a, b) = (
                num(n, "vertex count")?,
                num(a, "class size")?,
                num(b, "class size")?,
            );
            if a + b != n {
                return Err(Error::parse(
                    source,
                    hline,
                    format!("class sizes {a} + {b} != {n}"),
                ));
            }
            (n, num(m, "edge count")?, Some((a, b)))
        }
        _ => {
            return Err(Error::parse(
                source,
                hline,
                format!("malformed header `{header}`"),
            ))
        }
    };
    if n > u32::MAX as usize {
        return Err(Error::parse(
            source,
            hline,
            format!("vertex count {n} too large"),
        ));
    }

    let mut edges = Vec::with_capacity(m.min(1 << 24));
    for (lineno, line) in lines {
        let mut it = line.split_whitespace();
        let (u, v) = match (it.next(), it.next(), it.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(Error::parse(
                    source,
                    lineno,
                    format!("expected `u v`, got `{line}`"),
                ))
            }
        };
        let parse_v = |s: &str| -> Result<u32> {
            s.parse()
                .map_err(|_| Error::parse(source, lineno, format!("bad vertex `{s}`")))
        };
        let (u, v) = (parse_v(u)?, parse_v(v)?);
        if u >= v {
            return Err(Error::parse(
                source,
                lineno,
                format!("edge `{u} {v}` must satisfy u < v"),
            ));
        }
        if v as usize >= n {
            return Err(Error::parse(
                source,
                lineno,
                format!("vertex {v} out of range for n = {n}"),
            ));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::parse(
            source,
            hline,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Ok(RawEdgeList {
        n,
        bipartite,
        edges,
    })
}

pub fn parse_edge_list(text: &str, source: &str) -> Result<Graph> {
    let raw = parse_raw_edge_list(text, source)?;
    let mut builder = GraphBuilder::with_capacity(raw.n, raw.edges.len());
    if let Some((a, _)) = raw.bipartite {
        builder = builder.bipartition(a);
    }
    for &(u, v) in &raw.edges {
        builder
            .add_edge(u, v)
            .map_err(|e| Error::parse(source, 0, e.to_string()))?;
    }
    builder
        .build()
        .map_err(|e| Error::parse(source, 0, e.to_string()))
}

pub fn read_raw_edge_list(path: impl AsRef<Path>) -> Result<RawEdgeList> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_raw_edge_list(&text, &path.display().to_string())
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text, &path.display().to_string())
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.edge_count() + 1));
    write_edge_list_to(g, &mut out);
    out
}

fn write_edge_list_to(g: &Graph, out: &mut String) {
    use std::fmt::Write as _;
    match g.contiguous_bipartition() {
        Some((a, b)) => {
            let _ = writeln!(
                out,
                "{} {} bipartite {a} {b}",
                g.vertex_count(),
                g.edge_count()
            );
        }
        None => {
            let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
}

/// Edge-list text for `edges` on `n` vertices, without a bipartition.
pub fn format_edges(n: usize, edges: &[Edge]) -> String {
    use std::fmt::Write as _;
    let mut out = String::with_capacity(16 * (edges.len() + 1));
    let _ = writeln!(out, "{n} {}", edges.len());
    for &(u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_edge_list(g)).map_err(|e| Error::io(path, e))
}

/// One `id label` line per vertex, for graphs that carry labels.
pub fn write_labels(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let labels = g
        .labels()
        .ok_or_else(|| Error::InvalidArgument("graph carries no vertex labels".into()))?;
    let mut f = std::io::BufWriter::new(fs::File::create(path).map_err(|e| Error::io(path, e))?);
    for (i, l) in labels.iter().enumerate() {
        writeln!(f, "{i} {l}").map_err(|e| Error::io(path, e))?;
    }
    f.flush().map_err(|e| Error::io(path, e))
}
