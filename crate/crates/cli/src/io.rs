//! Edge-list and DIMACS `.col` reading and writing.

use std::fmt::Write as _;

use chibound_core::Graph;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// `n m`, then `m` lines `u v` with 0-based ids.
    EdgeList,
    /// `p edge n m` and `e u v` lines with 1-based ids.
    Dimacs,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::EdgeList => "edge-list",
            Format::Dimacs => "dimacs",
        }
    }

    /// Offset between input labels and dense ids.
    pub fn label_offset(self) -> usize {
        match self {
            Format::EdgeList => 0,
            Format::Dimacs => 1,
        }
    }

    /// DIMACS when the first meaningful line starts with `c` or `p`.
    pub fn detect(text: &str) -> Format {
        let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
        match first.and_then(|l| l.split_whitespace().next()) {
            Some("c") | Some("p") => Format::Dimacs,
            _ => Format::EdgeList,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub format: Format,
    /// Input label of each dense id.
    pub labels: Vec<usize>,
    pub warnings: Vec<String>,
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("line {line}: {msg}"))
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize, CliError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("{what} `{tok}` is not a nonnegative integer")))
}

struct EdgeSink {
    n: usize,
    offset: usize,
    edges: Vec<(usize, usize)>,
    seen: std::collections::HashSet<(usize, usize)>,
    warnings: Vec<String>,
}

impl EdgeSink {
    fn new(n: usize, offset: usize) -> Self {
        EdgeSink { n, offset, edges: Vec::new(), seen: Default::default(), warnings: Vec::new() }
    }

    fn add(&mut self, a: usize, b: usize, line: usize) -> Result<(), CliError> {
        let lo = self.offset;
        for x in [a, b] {
            if x < lo || x - lo >= self.n {
                return Err(parse_err(line, format!("vertex {x} outside {lo}..{}", self.n + lo)));
            }
        }
        if a == b {
            return Err(parse_err(line, format!("self-loop at vertex {a}")));
        }
        let (u, v) = ((a - lo).min(b - lo), (a - lo).max(b - lo));
        if self.seen.insert((u, v)) {
            self.edges.push((u, v));
        } else {
            self.warnings.push(format!("line {line}: duplicate edge {a} {b} ignored"));
        }
        Ok(())
    }
}

fn meaningful<'a>(text: &'a str, comment: &'static str) -> impl Iterator<Item = (usize, &'a str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(move |(_, l)| !l.is_empty() && !l.starts_with(comment))
}

fn parse_edge_list(text: &str) -> Result<ParsedGraph, CliError> {
    let mut lines = meaningful(text, "#");
    let (hl, header) = lines.next().ok_or_else(|| CliError::Input("empty input".into()))?;
    let mut toks = header.split_whitespace();
    let n = number(toks.next(), hl, "vertex count")?;
    let m = number(toks.next(), hl, "edge count")?;
    if toks.next().is_some() {
        return Err(parse_err(hl, "header must be `n m`"));
    }
    let mut sink = EdgeSink::new(n, 0);
    let mut listed = 0;
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        let a = number(toks.next(), ln, "endpoint")?;
        let b = number(toks.next(), ln, "endpoint")?;
        if toks.next().is_some() {
            return Err(parse_err(ln, "edge line must be `u v`"));
        }
        sink.add(a, b, ln)?;
        listed += 1;
    }
    if listed != m {
        return Err(CliError::Input(format!("header declares {m} edges, found {listed}")));
    }
    finish(sink, Format::EdgeList)
}

fn parse_dimacs(text: &str) -> Result<ParsedGraph, CliError> {
    let mut sink: Option<EdgeSink> = None;
    let mut declared = 0;
    let mut listed = 0;
    for (ln, l) in meaningful(text, "c") {
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("p") => {
                if sink.is_some() {
                    return Err(parse_err(ln, "second problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => return Err(parse_err(ln, format!("unsupported problem type {other:?}"))),
                }
                let n = number(toks.next(), ln, "vertex count")?;
                declared = number(toks.next(), ln, "edge count")?;
                sink = Some(EdgeSink::new(n, 1));
            }
            Some("e") => {
                let s = sink.as_mut().ok_or_else(|| parse_err(ln, "edge before problem line"))?;
                let a = number(toks.next(), ln, "endpoint")?;
                let b = number(toks.next(), ln, "endpoint")?;
                s.add(a, b, ln)?;
                listed += 1;
            }
            Some(tok) => return Err(parse_err(ln, format!("unknown line type `{tok}`"))),
            None => {}
        }
    }
    let mut sink = sink.ok_or_else(|| CliError::Input("missing `p edge n m` line".into()))?;
    if listed != declared {
        sink.warnings.push(format!("problem line declares {declared} edges, found {listed}"));
    }
    finish(sink, Format::Dimacs)
}

fn finish(sink: EdgeSink, format: Format) -> Result<ParsedGraph, CliError> {
    let graph = Graph::from_edges(sink.n, sink.edges).map_err(|e| CliError::Input(e.to_string()))?;
    let labels = (0..sink.n).map(|v| v + sink.offset).collect();
    Ok(ParsedGraph { graph, format, labels, warnings: sink.warnings })
}

pub fn parse_graph(text: &str, format: Format) -> Result<ParsedGraph, CliError> {
    match format {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

pub fn emit_graph(g: &Graph, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::EdgeList => {
            let _ = writeln!(out, "{} {}", g.n(), g.edge_count());
            for (u, v) in g.edges() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        Format::Dimacs => {
            let _ = writeln!(out, "p edge {} {}", g.n(), g.edge_count());
            for (u, v) in g.edges() {
                let _ = writeln!(out, "e {} {}", u + 1, v + 1);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use chibound_core::generators::{complete, cycle};

    #[test]
    fn edge_list_cycle() {
        let p = parse_graph("5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n", Format::EdgeList).unwrap();
        assert_eq!(p.graph, cycle(5));
        assert!(p.warnings.is_empty());
    }

    #[test]
    fn dimacs_triangle() {
        let p = parse_graph("c tri\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n", Format::Dimacs).unwrap();
        assert_eq!(p.graph, complete(3));
        assert_eq!(p.labels, vec![1, 2, 3]);
    }

    #[test]
    fn self_loop_is_an_error_with_line() {
        let e = parse_graph("p edge 2 1\ne 1 1\n", Format::Dimacs).unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        assert!(e.to_string().contains("self-loop"));
    }

    #[test]
    fn duplicates_warn() {
        let p = parse_graph("3 3\n0 1\n1 0\n1 2\n", Format::EdgeList).unwrap();
        assert_eq!(p.graph.edge_count(), 2);
        assert_eq!(p.warnings.len(), 1);
        assert!(p.warnings[0].starts_with("line 3"));
    }

    #[test]
    fn malformed_lines_report_their_number() {
        for (text, line) in [("3 1\n0 x\n", "line 2"), ("3\n", "line 1"), ("2 1\n\n0 5\n", "line 3")] {
            let e = parse_graph(text, Format::EdgeList).unwrap_err();
            assert!(e.to_string().contains(line), "{text:?}: {e}");
        }
        assert!(parse_graph("3 2\n0 1\n", Format::EdgeList).is_err());
        assert!(parse_graph("e 1 2\n", Format::Dimacs).is_err());
    }

    #[test]
    fn detection() {
        assert_eq!(Format::detect("c x\np edge 1 0\n"), Format::Dimacs);
        assert_eq!(Format::detect("# hi\n3 0\n"), Format::EdgeList);
    }
}
