//! The line-oriented edge-list format.
//!
//! ```text
//! # family=layer n=3 m=1 vertices=6 edges=6
//! v 0 1
//! v 1 2
//! ...
//! e 0 3
//! ...
//! ```
//!
//! Vertex lines come in id order, edge lines as `e <lo> <hi>` in
//! lexicographic order. ASCII with LF line endings. Squared graphs are
//! written with `family=raw`, keeping `n` and `m`.

use std::fmt::Write as _;
use std::io;

use crate::error::{Error, Result};
use crate::graph::{Family, Graph, VertexId};
use crate::subset::SubsetWord;

/// Renders `g` in the edge-list format.
pub fn to_edge_list(g: &Graph) -> String {
    let meta = g.meta();
    let family = if meta.squared { Family::Raw } else { meta.family };
    let mut out = String::with_capacity(16 * (g.vertex_count() + g.edge_count()) + 64);
    let _ = writeln!(
        out,
        "# family={} n={} m={} vertices={} edges={}",
        family,
        meta.n,
        meta.m,
        g.vertex_count(),
        g.edge_count()
    );
    for (id, label) in g.labels().iter().enumerate() {
        let _ = writeln!(out, "v {id} {label}");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

pub fn write_edge_list<W: io::Write>(g: &Graph, mut writer: W) -> io::Result<()> {
    writer.write_all(to_edge_list(g).as_bytes())
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn header_field<'a>(fields: &[(&'a str, &'a str)], key: &str) -> Result<&'a str> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| parse_err(1, format!("header is missing `{key}`")))
}

fn header_number(fields: &[(&str, &str)], key: &str) -> Result<u64> {
    header_field(fields, key)?
        .parse()
        .map_err(|_| parse_err(1, format!("header field `{key}` is not a number")))
}

/// Parses an edge list and revalidates it: header counts, id order, edge
/// order, and (for `johnson` / `layer`) the family formulas.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let header = header
        .strip_prefix("# ")
        .ok_or_else(|| parse_err(1, "header must start with `# `"))?;
    let fields: Vec<(&str, &str)> = header
        .split(' ')
        .map(|kv| kv.split_once('=').ok_or_else(|| parse_err(1, format!("bad header token `{kv}`"))))
        .collect::<Result<_>>()?;
    let family: Family = header_field(&fields, "family")?
        .parse()
        .map_err(|_| parse_err(1, "unknown family"))?;
    let n = header_number(&fields, "n")? as u32;
    let m = header_number(&fields, "m")? as u32;
    let vertex_count = header_number(&fields, "vertices")? as usize;
    let edge_count = header_number(&fields, "edges")? as usize;

    let mut labels = Vec::with_capacity(vertex_count);
    let mut adjacency: Vec<Vec<VertexId>> = vec![Vec::new(); vertex_count];
    let mut last_edge: Option<(VertexId, VertexId)> = None;
    let mut edges_seen = 0usize;
    for (lineno, line) in lines {
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(' ');
        match parts.next() {
            Some("v") => {
                if edges_seen > 0 {
                    return Err(parse_err(lineno, "vertex line after edge lines"));
                }
                let id: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| parse_err(lineno, "bad vertex id"))?;
                if id != labels.len() {
                    return Err(parse_err(lineno, format!("expected vertex id {}", labels.len())));
                }
                if id >= vertex_count {
                    return Err(parse_err(lineno, "more vertices than the header declares"));
                }
                let text = parts.next().ok_or_else(|| parse_err(lineno, "missing label"))?;
                let label = SubsetWord::parse(text, n).map_err(|e| parse_err(lineno, e.to_string()))?;
                labels.push(label);
            }
            Some("e") => {
                let mut id = || -> Result<VertexId> {
                    parts
                        .next()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| parse_err(lineno, "bad edge endpoint"))
                };
                let (u, v) = (id()?, id()?);
                if u >= v || v as usize >= vertex_count {
                    return Err(parse_err(lineno, format!("edge ({u}, {v}) is not `lo hi` within range")));
                }
                if last_edge.is_some_and(|prev| prev >= (u, v)) {
                    return Err(parse_err(lineno, "edges not strictly ascending"));
                }
                last_edge = Some((u, v));
                adjacency[u as usize].push(v);
                adjacency[v as usize].push(u);
                edges_seen += 1;
            }
            _ => return Err(parse_err(lineno, format!("unrecognised line `{line}`"))),
        }
    }
    if labels.len() != vertex_count {
        return Err(parse_err(0, format!("header declares {vertex_count} vertices, found {}", labels.len())));
    }
    if edges_seen != edge_count {
        return Err(parse_err(0, format!("header declares {edge_count} edges, found {edges_seen}")));
    }
    for row in &mut adjacency {
        row.sort_unstable();
    }
    Graph::from_parts(family, n, m, false, labels, adjacency)
}
