//! Batch front end: graph I/O, generators, and one subcommand per
//! capability, each emitting a `key: value` certificate.

pub mod cert;
pub mod commands;
pub mod error;
pub mod io;
pub mod sweep;

use std::io::Read;
use std::path::PathBuf;

use chibound_core::Budget;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use cert::Certificate;
pub use error::CliError;
pub use io::{emit_graph, parse_graph, Format, ParsedGraph};

/// Environment variable overriding the χ-engine node budget.
pub const BUDGET_VAR: &str = "CHIBOUND_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "chibound",
    version,
    about = "Recognition, decomposition and certified coloring for graph classes defined by forbidden induced subdivisions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GraphInput {
    /// Graph file; standard input when absent or `-`.
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    /// Input format; detected from the first line when absent.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Write the document here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColorClass {
    Paw,
    Bull,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a generated graph.
    Generate {
        #[command(subcommand)]
        kind: GenKind,
        /// Output format.
        #[arg(long, value_enum, default_value = "edge-list")]
        emit: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Decide whether the graph contains an induced subdivision of a pattern.
    Recognize {
        #[command(flatten)]
        graph: GraphInput,
        /// `paw`, `bull`, or `necklace M0 M1 ..`.
        #[arg(long, num_args = 1.., required = true)]
        pattern: Vec<String>,
        /// Largest graph the exhaustive oracle accepts.
        #[arg(long, default_value_t = chibound_core::bull::MEMBERSHIP_GUARD)]
        size_guard: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Color a paw*-free or bull*-free graph within the class bound.
    Color {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_enum)]
        class: ColorClass,
        #[command(flatten)]
        output: Output,
    },
    /// Decompose a bull*-free graph: basic, homogeneous set, or cut vertex.
    Decompose {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        output: Output,
    },
    /// Extract an (m)_n-alloy rooted at a vertex.
    ExtractAlloy {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Upper bound on the local chromatic number; computed exactly when absent.
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long, default_value_t = 0)]
        beta: usize,
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Skip the chromatic preconditions; outputs are still validated.
        #[arg(long)]
        relaxed: bool,
        /// Run only the base case, whose threshold is (m+1)·alpha + beta
        /// instead of 2^(n+1)·((m+3)·alpha + beta); requires `--n 0`.
        #[arg(long)]
        base_case: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Sweep every pattern-free graph up to a size, plus optional samples.
    Sweep {
        #[arg(long)]
        max_n: usize,
        /// `paw`, `bull`, or `necklace M0 M1 ..`.
        #[arg(long, num_args = 1.., required = true)]
        pattern: Vec<String>,
        /// Check the class's χ-bound on every graph.
        #[arg(long)]
        check_bound: bool,
        /// Random pattern-free graphs added to the sweep.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 12)]
        sample_min_n: usize,
        #[arg(long, default_value_t = 15)]
        sample_max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; results do not depend on this.
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Re-validate a certificate against its input graph.
    Verify {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        cert: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum GenKind {
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// Depth 1 is K2, depth 2 is C5.
    Mycielski {
        depth: usize,
    },
    Kneser {
        n: usize,
        k: usize,
    },
    /// Segment lengths `m_0 .. m_n`.
    Necklace {
        #[arg(required = true)]
        lengths: Vec<usize>,
    },
    Gnp {
        n: usize,
        p: f64,
        seed: u64,
    },
}

/// A finished command: the document and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub document: String,
    pub code: i32,
    pub warnings: Vec<String>,
}

/// Node budget from [`BUDGET_VAR`], else the default.
pub fn budget_from(var: Option<&str>) -> Result<Budget, CliError> {
    match var {
        None => Ok(Budget::default()),
        Some(s) => s
            .trim()
            .parse()
            .map(Budget::new)
            .map_err(|_| CliError::Input(format!("{BUDGET_VAR}={s} is not a node count"))),
    }
}

pub fn read_graph(input: &GraphInput, stdin: &mut dyn Read) -> Result<ParsedGraph, CliError> {
    let text = match &input.input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    parse_graph(&text, input.format.unwrap_or_else(|| Format::detect(&text)))
}

/// Runs one command. The document is written to `--out` when given and
/// returned either way.
pub fn run(cli: &Cli, stdin: &mut dyn Read, budget_var: Option<&str>) -> Result<Outcome, CliError> {
    let budget = budget_from(budget_var)?;
    let (outcome, out) = commands::dispatch(&cli.command, stdin, budget)?;
    if let Some(path) = out {
        std::fs::write(path, &outcome.document)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(outcome)
}
