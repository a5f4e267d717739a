//! Line-oriented `key: value` certificate documents.

use std::fmt::Write as _;

use chibound_core::{Graph, SubdivisionWitness, Vertex, VertexSet};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::io::{emit_graph, Format};

pub const VERSION: &str = "1";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub entries: Vec<(String, String)>,
}

impl Certificate {
    pub fn new(command: &str) -> Self {
        let mut c = Certificate::default();
        c.push("chibound-certificate", VERSION);
        c.push("command", command);
        c
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_owned(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.entries.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str, CliError> {
        self.get(key).ok_or_else(|| CliError::Input(format!("certificate lacks `{key}`")))
    }

    pub fn require_usize(&self, key: &str) -> Result<usize, CliError> {
        let v = self.require(key)?;
        v.parse().map_err(|_| CliError::Input(format!("certificate field `{key}` is not a number: {v}")))
    }

    pub fn command(&self) -> Option<&str> {
        self.get("command")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Certificate, CliError> {
        let mut c = Certificate::default();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once(": ")
                .or_else(|| line.strip_suffix(':').map(|k| (k, "")))
                .ok_or_else(|| CliError::Input(format!("certificate line {}: expected `key: value`", i + 1)))?;
            c.push(k, v);
        }
        if c.get("chibound-certificate") != Some(VERSION) {
            return Err(CliError::Input("not a chibound certificate".into()));
        }
        Ok(c)
    }

    /// Records the graph digest and size.
    pub fn push_input(&mut self, g: &Graph, format: Format) {
        self.push("input-format", format.name());
        self.push("label-offset", format.label_offset());
        self.push("input-sha256", digest(g));
        self.push("vertices", g.n());
        self.push("edges", g.edge_count());
    }

    pub fn check_input(&self, g: &Graph) -> Result<(), String> {
        match self.get("input-sha256") {
            Some(d) if d == digest(g) => Ok(()),
            Some(_) => Err("input digest does not match the graph".into()),
            None => Err("certificate has no input digest".into()),
        }
    }

    pub fn push_witness(&mut self, w: &SubdivisionWitness) {
        self.push("witness-branch", join(&w.branch_map));
        for ((a, b), p) in &w.edge_paths {
            self.push("witness-path", format!("{a} {b}: {}", join(p)));
        }
    }

    pub fn witness(&self) -> Result<Option<SubdivisionWitness>, CliError> {
        let Some(branch) = self.get("witness-branch") else {
            return Ok(None);
        };
        let branch_map = ids(branch)?;
        let mut edge_paths = Vec::new();
        for p in self.get_all("witness-path") {
            let (e, path) =
                p.split_once(": ").ok_or_else(|| CliError::Input(format!("malformed witness path `{p}`")))?;
            let e = ids(e)?;
            if e.len() != 2 {
                return Err(CliError::Input(format!("malformed witness edge `{p}`")));
            }
            edge_paths.push(((e[0], e[1]), ids(path)?));
        }
        Ok(Some(SubdivisionWitness { branch_map, edge_paths }))
    }
}

/// SHA-256 of the canonical edge-list rendering.
pub fn digest(g: &Graph) -> String {
    Sha256::digest(emit_graph(g, Format::EdgeList).as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn join_set(s: &VertexSet) -> String {
    join(s.as_slice())
}

pub fn ids(s: &str) -> Result<Vec<Vertex>, CliError> {
    s.split_whitespace().map(|t| t.parse().map_err(|_| CliError::Input(format!("`{t}` is not a vertex id")))).collect()
}

pub fn id_set(s: &str) -> Result<VertexSet, CliError> {
    Ok(ids(s)?.into_iter().collect())
}
