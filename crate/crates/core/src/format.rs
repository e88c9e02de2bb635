//! Line-oriented text formats.
//!
//! ```text
//! nmgraph <n> <m>
//! vertices <N>
//! label <i> <string>      # optional
//! arc <tail> <head> <t>   # t even, 2 <= t <= 2n
//! edge <u> <v> <t>        # 2n+1 <= t <= 2n+m
//! ```
//!
//! Undirected graphs use a `graph` header and `edge <u> <v>` lines; vertex
//! colorings use a `coloring` header and `color <v> <c>` lines.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{NmGraph, NmGraphBuilder, Signature, UndirectedGraph};

/// Either kind of graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGraph {
    Nm(NmGraph),
    Undirected(UndirectedGraph),
}

impl AnyGraph {
    pub fn underlying(&self) -> UndirectedGraph {
        match self {
            AnyGraph::Nm(g) => g.underlying(),
            AnyGraph::Undirected(g) => g.clone(),
        }
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }
}

impl<'a> Iterator for Lines<'a> {
    /// (1-based line number, content without comment, trimmed)
    type Item = (usize, &'a str);

    fn next(&mut self) -> Option<Self::Item> {
        for (i, raw) in self.inner.by_ref() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if !body.is_empty() {
                return Some((i + 1, body));
            }
        }
        None
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax(msg.into()).at_line(line)
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

fn expect_end<'a>(line: usize, mut toks: impl Iterator<Item = &'a str>) -> Result<()> {
    match toks.next() {
        Some(t) => Err(syntax(line, format!("unexpected token `{t}`"))),
        None => Ok(()),
    }
}

fn header_vertices(lines: &mut Lines<'_>) -> Result<usize> {
    let Some((line, body)) = lines.next() else {
        return Err(syntax(0, "missing `vertices` line"));
    };
    let mut toks = body.split_whitespace();
    if toks.next() != Some("vertices") {
        return Err(syntax(line, "expected `vertices <N>`"));
    }
    let n = parse_num(line, toks.next(), "vertex count")?;
    expect_end(line, toks)?;
    Ok(n)
}

pub fn parse_nmgraph(text: &str) -> Result<NmGraph> {
    let mut lines = Lines::new(text);
    let Some((line, body)) = lines.next() else {
        return Err(syntax(0, "empty input"));
    };
    let mut toks = body.split_whitespace();
    if toks.next() != Some("nmgraph") {
        return Err(syntax(line, "expected `nmgraph <n> <m>`"));
    }
    let n = parse_num(line, toks.next(), "n")?;
    let m = parse_num(line, toks.next(), "m")?;
    expect_end(line, toks)?;
    let sig = Signature::new(n, m).map_err(|e| e.at_line(line))?;
    let order = header_vertices(&mut lines)?;
    let mut b = NmGraphBuilder::new(sig, order);

    for (line, body) in lines {
        let mut toks = body.split_whitespace();
        match toks.next() {
            Some("label") => {
                let v: usize = parse_num(line, toks.next(), "vertex")?;
                let rest = body
                    .split_once(char::is_whitespace)
                    .and_then(|(_, r)| r.trim_start().split_once(char::is_whitespace))
                    .map(|(_, r)| r.trim())
                    .unwrap_or("");
                if rest.is_empty() {
                    return Err(syntax(line, "missing label text"));
                }
                b.set_label(v, rest).map_err(|e| e.at_line(line))?;
            }
            Some(kw @ ("arc" | "edge")) => {
                let u: usize = parse_num(line, toks.next(), "vertex")?;
                let v: usize = parse_num(line, toks.next(), "vertex")?;
                let t: u32 = parse_num(line, toks.next(), "type")?;
                expect_end(line, toks)?;
                let r = if kw == "arc" {
                    b.add_arc(u, v, t)
                } else {
                    b.add_edge(u, v, t)
                };
                r.map_err(|e| e.at_line(line))?;
            }
            Some(other) => return Err(syntax(line, format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
    }
    Ok(b.build())
}

pub fn serialize_nmgraph(g: &NmGraph) -> String {
    let sig = g.signature();
    let mut out = String::new();
    writeln!(out, "nmgraph {} {}", sig.n(), sig.m()).unwrap();
    writeln!(out, "vertices {}", g.order()).unwrap();
    for v in 0..g.order() {
        if let Some(l) = g.label(v) {
            writeln!(out, "label {v} {l}").unwrap();
        }
    }
    for a in g.arcs() {
        writeln!(out, "arc {} {} {}", a.tail, a.head, a.kind).unwrap();
    }
    for e in g.edges() {
        writeln!(out, "edge {} {} {}", e.u, e.v, e.kind).unwrap();
    }
    out
}

pub fn parse_undirected(text: &str) -> Result<UndirectedGraph> {
    let mut lines = Lines::new(text);
    let Some((line, body)) = lines.next() else {
        return Err(syntax(0, "empty input"));
    };
    if body != "graph" {
        return Err(syntax(line, "expected `graph`"));
    }
    let order = header_vertices(&mut lines)?;
    let mut g = UndirectedGraph::new(order);
    for (line, body) in lines {
        let mut toks = body.split_whitespace();
        match toks.next() {
            Some("edge") => {
                let u = parse_num(line, toks.next(), "vertex")?;
                let v = parse_num(line, toks.next(), "vertex")?;
                expect_end(line, toks)?;
                g.add_edge(u, v).map_err(|e| e.at_line(line))?;
            }
            Some(other) => return Err(syntax(line, format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
    }
    Ok(g)
}

pub fn serialize_undirected(g: &UndirectedGraph) -> String {
    let mut out = String::new();
    writeln!(out, "graph").unwrap();
    writeln!(out, "vertices {}", g.order()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "edge {u} {v}").unwrap();
    }
    out
}

/// Dispatches on the header keyword.
pub fn parse_any(text: &str) -> Result<AnyGraph> {
    match Lines::new(text).next() {
        Some((_, body)) if body.starts_with("nmgraph") => parse_nmgraph(text).map(AnyGraph::Nm),
        Some((_, "graph")) => parse_undirected(text).map(AnyGraph::Undirected),
        Some((line, _)) => Err(syntax(line, "expected `nmgraph` or `graph` header")),
        None => Err(syntax(0, "empty input")),
    }
}

/// Parses a total vertex coloring.
pub fn parse_coloring(text: &str) -> Result<Vec<usize>> {
    let mut lines = Lines::new(text);
    let Some((line, body)) = lines.next() else {
        return Err(syntax(0, "empty input"));
    };
    if body != "coloring" {
        return Err(syntax(line, "expected `coloring`"));
    }
    let order = header_vertices(&mut lines)?;
    let mut colors = vec![None; order];
    for (line, body) in lines {
        let mut toks = body.split_whitespace();
        if toks.next() != Some("color") {
            return Err(syntax(line, "expected `color <v> <c>`"));
        }
        let v: usize = parse_num(line, toks.next(), "vertex")?;
        let c: usize = parse_num(line, toks.next(), "color")?;
        expect_end(line, toks)?;
        let slot = colors
            .get_mut(v)
            .ok_or(Error::UnknownVertex { vertex: v, order })
            .map_err(|e| e.at_line(line))?;
        if slot.replace(c).is_some() {
            return Err(syntax(line, format!("vertex {v} colored twice")));
        }
    }
    colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| Error::Domain(format!("vertex {v} has no color"))))
        .collect()
}

pub fn serialize_coloring(colors: &[usize]) -> String {
    let mut out = format!("coloring\nvertices {}\n", colors.len());
    for (v, c) in colors.iter().enumerate() {
        writeln!(out, "color {v} {c}").unwrap();
    }
    out
}
