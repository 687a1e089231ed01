//! Text, JSON and DOT formats for graphs, extensions, matrices and vectors.
//!
//! Graph text format, one declaration per line, `#` starting a comment:
//!
//! ```text
//! vertex w1
//! edge a w1 w1        # explicit id
//! edge w1 w2          # id generated as e<k>
//! ```
//!
//! Extension files add `addvertex <id>`, `addedge [<id>] <src> <dst>` and
//! `sink <id>` lines. Both kinds of file may instead hold a single JSON
//! document ([`GraphDocument`] / [`ExtensionDocument`]).

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::{AddedEdge, OneSinkExtension};
use crate::graph::{DirectedMultigraph, GraphBuilder};
use crate::matrix::{IntMatrix, IntVector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub source: String,
    pub range: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDocument {
    pub base: GraphDocument,
    pub added_vertices: Vec<String>,
    #[serde(default)]
    pub added_edges: Vec<EdgeRecord>,
    pub sink: String,
}

impl From<&DirectedMultigraph> for GraphDocument {
    fn from(g: &DirectedMultigraph) -> Self {
        GraphDocument {
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    id: Some(e.id.clone()),
                    source: g.vertices()[e.source].clone(),
                    range: g.vertices()[e.range].clone(),
                })
                .collect(),
        }
    }
}

impl From<&OneSinkExtension> for ExtensionDocument {
    fn from(e: &OneSinkExtension) -> Self {
        ExtensionDocument {
            base: e.base().into(),
            added_vertices: e.added_vertices().to_vec(),
            added_edges: e
                .added_edges()
                .iter()
                .map(|a| EdgeRecord {
                    id: Some(a.id.clone()),
                    source: a.source.clone(),
                    range: a.range.clone(),
                })
                .collect(),
            sink: e.sink().to_string(),
        }
    }
}

impl GraphDocument {
    pub fn to_graph(&self) -> Result<DirectedMultigraph> {
        let mut b = GraphBuilder::new();
        for v in &self.vertices {
            b.add_vertex(v.clone());
        }
        for e in &self.edges {
            b.add_edge(e.id.clone(), e.source.clone(), e.range.clone());
        }
        b.build()
    }
}

impl ExtensionDocument {
    pub fn to_extension(&self) -> Result<OneSinkExtension> {
        let base = self.base.to_graph()?;
        let mut taken: std::collections::HashSet<String> =
            base.edges().iter().map(|e| e.id.clone()).collect();
        for e in &self.added_edges {
            if let Some(id) = &e.id {
                if !taken.insert(id.clone()) {
                    return Err(Error::DuplicateId(id.clone()));
                }
            }
        }
        let mut added = Vec::with_capacity(self.added_edges.len());
        for (k, e) in self.added_edges.iter().enumerate() {
            let id = match &e.id {
                Some(id) => id.clone(),
                None => {
                    let mut n = base.edge_count() + k;
                    while taken.contains(&format!("e{n}")) {
                        n += 1;
                    }
                    let id = format!("e{n}");
                    taken.insert(id.clone());
                    id
                }
            };
            added.push(AddedEdge {
                id,
                source: e.source.clone(),
                range: e.range.clone(),
            });
        }
        OneSinkExtension::new(base, self.added_vertices.clone(), added, self.sink.clone())
    }
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.to_string())
}

/// Significant lines with their 1-based numbers, comments stripped.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn edge_record(line: usize, keyword: &str, args: &[&str]) -> Result<EdgeRecord> {
    match args {
        [id, s, r] => Ok(EdgeRecord {
            id: Some(id.to_string()),
            source: s.to_string(),
            range: r.to_string(),
        }),
        [s, r] => Ok(EdgeRecord {
            id: None,
            source: s.to_string(),
            range: r.to_string(),
        }),
        _ => Err(Error::parse(
            line,
            format!("`{keyword}` expects `[<id>] <source> <range>`"),
        )),
    }
}

fn single_id<'a>(line: usize, keyword: &str, args: &[&'a str]) -> Result<&'a str> {
    match args {
        [id] => Ok(id),
        _ => Err(Error::parse(line, format!("`{keyword}` expects one id"))),
    }
}

pub fn parse_graph_document(text: &str) -> Result<GraphDocument> {
    if looks_like_json(text) {
        return serde_json::from_str(text).map_err(json_error);
    }
    let mut doc = GraphDocument {
        vertices: Vec::new(),
        edges: Vec::new(),
    };
    for (line, tokens) in lines(text) {
        match tokens[0] {
            "vertex" => doc
                .vertices
                .push(single_id(line, "vertex", &tokens[1..])?.to_string()),
            "edge" => doc.edges.push(edge_record(line, "edge", &tokens[1..])?),
            other => return Err(Error::parse(line, format!("unknown keyword `{other}`"))),
        }
    }
    Ok(doc)
}

/// Parses a graph from the line format or a JSON [`GraphDocument`].
pub fn parse_graph(text: &str) -> Result<DirectedMultigraph> {
    parse_graph_document(text)?.to_graph()
}

pub fn parse_extension_document(text: &str) -> Result<ExtensionDocument> {
    if looks_like_json(text) {
        return serde_json::from_str(text).map_err(json_error);
    }
    let mut base = GraphDocument {
        vertices: Vec::new(),
        edges: Vec::new(),
    };
    let mut added_vertices = Vec::new();
    let mut added_edges = Vec::new();
    let mut sink: Option<String> = None;
    for (line, tokens) in lines(text) {
        let args = &tokens[1..];
        match tokens[0] {
            "vertex" => base
                .vertices
                .push(single_id(line, "vertex", args)?.to_string()),
            "edge" => base.edges.push(edge_record(line, "edge", args)?),
            "addvertex" => added_vertices.push(single_id(line, "addvertex", args)?.to_string()),
            "addedge" => added_edges.push(edge_record(line, "addedge", args)?),
            "sink" => {
                let id = single_id(line, "sink", args)?;
                if sink.replace(id.to_string()).is_some() {
                    return Err(Error::parse(line, "more than one `sink` line"));
                }
            }
            other => return Err(Error::parse(line, format!("unknown keyword `{other}`"))),
        }
    }
    let sink = sink.ok_or_else(|| Error::parse(0, "missing `sink` line"))?;
    Ok(ExtensionDocument {
        base,
        added_vertices,
        added_edges,
        sink,
    })
}

/// Parses an extension from the line format or a JSON [`ExtensionDocument`].
pub fn parse_extension(text: &str) -> Result<OneSinkExtension> {
    parse_extension_document(text)?.to_extension()
}

fn write_graph_lines(out: &mut String, g: &DirectedMultigraph) {
    for v in g.vertices() {
        writeln!(out, "vertex {v}").unwrap();
    }
    for e in g.edges() {
        writeln!(
            out,
            "edge {} {} {}",
            e.id,
            g.vertices()[e.source],
            g.vertices()[e.range]
        )
        .unwrap();
    }
}

pub fn graph_to_text(g: &DirectedMultigraph) -> String {
    let mut out = String::new();
    write_graph_lines(&mut out, g);
    out
}

pub fn extension_to_text(e: &OneSinkExtension) -> String {
    let mut out = String::new();
    write_graph_lines(&mut out, e.base());
    for h in e.added_vertices() {
        writeln!(out, "addvertex {h}").unwrap();
    }
    for a in e.added_edges() {
        writeln!(out, "addedge {} {} {}", a.id, a.source, a.range).unwrap();
    }
    writeln!(out, "sink {}", e.sink()).unwrap();
    out
}

/// Parses the matrix exchange format: `rows cols`, then `rows` lines of
/// `cols` integers. Blank lines and `#` comments are ignored.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut it = lines(text);
    let (line, header) = it
        .next()
        .ok_or_else(|| Error::parse(0, "empty matrix file"))?;
    let dims: Vec<usize> = header
        .iter()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::parse(line, format!("bad dimensions: {e}")))?;
    let [rows, cols] = dims[..] else {
        return Err(Error::parse(line, "expected `rows cols`"));
    };
    let mut entries = Vec::with_capacity(rows * cols);
    let mut seen_rows = 0;
    for (line, tokens) in it {
        if seen_rows == rows {
            return Err(Error::parse(line, "more rows than declared"));
        }
        if tokens.len() != cols {
            return Err(Error::parse(
                line,
                format!("expected {cols} entries, found {}", tokens.len()),
            ));
        }
        for t in tokens {
            let v: BigInt = t
                .parse()
                .map_err(|_| Error::parse(line, format!("not an integer: `{t}`")))?;
            entries.push(v);
        }
        seen_rows += 1;
    }
    if seen_rows != rows {
        return Err(Error::parse(
            0,
            format!("expected {rows} rows, found {seen_rows}"),
        ));
    }
    IntMatrix::from_entries(rows, cols, entries)
}

/// Parses a comma-separated integer vector such as `1,-2,3`.
pub fn parse_vector(text: &str) -> Result<IntVector> {
    let text = text.trim().trim_start_matches('(').trim_end_matches(')');
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<BigInt>()
                .map_err(|_| Error::parse(1, format!("not an integer: `{t}`")))
        })
        .collect()
}

pub fn format_vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn dot_id(id: &str) -> String {
    format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph_to_dot(g: &DirectedMultigraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        writeln!(out, "  {};", dot_id(v)).unwrap();
    }
    for e in g.edges() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_id(&g.vertices()[e.source]),
            dot_id(&g.vertices()[e.range]),
            dot_id(&e.id)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// DOT rendering with the added vertices and edges drawn dashed in red and
/// the sink doubled.
pub fn extension_to_dot(e: &OneSinkExtension) -> String {
    let g = e.base();
    let mut out = String::from("digraph E {\n");
    for v in g.vertices() {
        writeln!(out, "  {};", dot_id(v)).unwrap();
    }
    for h in e.added_vertices() {
        let shape = if h == e.sink() {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(
            out,
            "  {} [color=red, style=dashed, shape={shape}];",
            dot_id(h)
        )
        .unwrap();
    }
    for edge in g.edges() {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_id(&g.vertices()[edge.source]),
            dot_id(&g.vertices()[edge.range]),
            dot_id(&edge.id)
        )
        .unwrap();
    }
    for a in e.added_edges() {
        writeln!(
            out,
            "  {} -> {} [label={}, color=red, style=dashed];",
            dot_id(&a.source),
            dot_id(&a.range),
            dot_id(&a.id)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
