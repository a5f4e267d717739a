//! Subcommand bodies and the certificate validators `verify` re-runs.

use std::io::Read;
use std::path::Path;

use chibound_core::alloy::{
    alloy_base_case, extract_alloy, validate_alloy, Alloy, AlloyParams, Extraction, InductionBranch,
};
use chibound_core::bull::{color_bull_star_free, decompose_bull, DecompositionResult, MEMBERSHIP_GUARD};
use chibound_core::exact::{chromatic_number, clique_number, local_chromatic_number};
use chibound_core::generators::{complete, cycle, gnp, kneser, mycielski};
use chibound_core::necklace::build_necklace;
use chibound_core::paw::{classify_paw, color_paw_star_free, paw_bound, ComponentKind};
use chibound_core::subdivision::{find_induced_subdivision, verify_witness, verify_witness_pinned, OracleOptions};
use chibound_core::{Budget, Coloring, Error, Graph, Pattern, SubdivisionWitness};

use crate::cert::{id_set, ids, join, join_set, Certificate};
use crate::error::CliError;
use crate::io::{emit_graph, Format, ParsedGraph};
use crate::{read_graph, sweep, ColorClass, Command, GenKind, Outcome, Output};

/// A forbidden pattern named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternSpec {
    Paw,
    Bull,
    Necklace(Vec<usize>),
}

impl PatternSpec {
    pub fn parse<S: AsRef<str>>(words: &[S]) -> Result<Self, CliError> {
        let bad = || CliError::Input("pattern must be `paw`, `bull`, or `necklace M0 M1 ..`".into());
        let (head, rest) = words.split_first().ok_or_else(bad)?;
        match (head.as_ref(), rest.is_empty()) {
            ("paw", true) => Ok(PatternSpec::Paw),
            ("bull", true) => Ok(PatternSpec::Bull),
            ("necklace", false) => {
                let lengths = rest
                    .iter()
                    .map(|w| w.as_ref().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                build_necklace(&lengths)?;
                Ok(PatternSpec::Necklace(lengths))
            }
            _ => Err(bad()),
        }
    }

    pub fn pattern(&self) -> Pattern {
        match self {
            PatternSpec::Paw => Pattern::paw(),
            PatternSpec::Bull => Pattern::bull(),
            PatternSpec::Necklace(l) => Pattern::necklace(l).expect("lengths checked at parse"),
        }
    }

    /// Command-line spelling, re-parseable by [`PatternSpec::parse`].
    pub fn words(&self) -> String {
        match self {
            PatternSpec::Paw => "paw".into(),
            PatternSpec::Bull => "bull".into(),
            PatternSpec::Necklace(l) => format!("necklace {}", join(l)),
        }
    }

    pub fn name(&self) -> String {
        self.pattern().name
    }
}

impl Command {
    pub fn output(&self) -> &Output {
        match self {
            Command::Generate { output, .. }
            | Command::Recognize { output, .. }
            | Command::Color { output, .. }
            | Command::Decompose { output, .. }
            | Command::ExtractAlloy { output, .. }
            | Command::Sweep { output, .. }
            | Command::Verify { output, .. } => output,
        }
    }
}

pub(crate) fn dispatch<'a>(
    command: &'a Command,
    stdin: &mut dyn Read,
    budget: Budget,
) -> Result<(Outcome, Option<&'a Path>), CliError> {
    let out = command.output().out.as_deref();
    let (document, code, warnings) = match command {
        Command::Generate { kind, emit, .. } => (emit_graph(&generate(kind)?, *emit), 0, Vec::new()),
        Command::Verify { graph, cert, .. } => {
            let text = std::fs::read_to_string(cert)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", cert.display())))?;
            let cert = Certificate::parse(&text)?;
            let needs_graph = cert.command() != Some("sweep");
            let parsed = if needs_graph { Some(read_graph(graph, stdin)?) } else { None };
            let (doc, code) = verify(&cert, parsed.as_ref().map(|p| &p.graph), budget)?;
            (doc.render(), code, parsed.map(|p| p.warnings).unwrap_or_default())
        }
        Command::Sweep { max_n, pattern, check_bound, samples, sample_min_n, sample_max_n, seed, threads, .. } => {
            let cfg = sweep::SweepConfig {
                pattern: PatternSpec::parse(pattern)?,
                max_n: *max_n,
                check_bound: *check_bound,
                samples: *samples,
                sample_n: (*sample_min_n, *sample_max_n),
                seed: *seed,
            };
            let threads = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let (doc, code) = sweep::run_sweep(&cfg, threads, budget)?;
            (doc.render(), code, Vec::new())
        }
        other => {
            let input = match other {
                Command::Recognize { graph, .. }
                | Command::Color { graph, .. }
                | Command::Decompose { graph, .. }
                | Command::ExtractAlloy { graph, .. } => graph,
                _ => unreachable!("handled above"),
            };
            let parsed = read_graph(input, stdin)?;
            let (cert, code) = certify(other, &parsed, budget)?;
            (cert.render(), code, parsed.warnings)
        }
    };
    Ok((Outcome { document, code, warnings }, out))
}

pub fn generate(kind: &GenKind) -> Result<Graph, CliError> {
    Ok(match kind {
        GenKind::Cycle { n } if *n < 3 => return Err(CliError::Input("a cycle needs at least 3 vertices".into())),
        GenKind::Cycle { n } => cycle(*n),
        GenKind::Complete { n } => complete(*n),
        GenKind::Mycielski { depth } => mycielski(*depth)?,
        GenKind::Kneser { n, k } => kneser(*n, *k)?,
        GenKind::Necklace { lengths } => build_necklace(lengths)?.graph,
        GenKind::Gnp { n, p, seed } => gnp(*n, *p, *seed)?,
    })
}

/// Runs a graph command, self-validates the certificate, and returns it
/// with the exit code.
fn certify(command: &Command, parsed: &ParsedGraph, budget: Budget) -> Result<(Certificate, i32), CliError> {
    let g = &parsed.graph;
    let (mut cert, code) = match command {
        Command::Recognize { pattern, size_guard, .. } => {
            recognize(g, parsed.format, &PatternSpec::parse(pattern)?, *size_guard)?
        }
        Command::Color { class, .. } => color(g, parsed.format, *class)?,
        Command::Decompose { .. } => decompose(g, parsed.format)?,
        Command::ExtractAlloy { m, n, alpha, beta, root, relaxed, base_case, .. } => {
            let req = AlloyRequest {
                m: *m,
                n: *n,
                alpha: *alpha,
                beta: *beta,
                root: *root,
                relaxed: *relaxed,
                base_case: *base_case,
            };
            extract(g, parsed.format, &req, budget)?
        }
        _ => unreachable!("graph commands only"),
    };
    validate(&cert, g, budget).map_err(|e| CliError::Internal(format!("emitted certificate fails validation: {e}")))?;
    cert.push("validation", "ok");
    Ok((cert, code))
}

fn oracle(g: &Graph, h: &Pattern, guard: usize) -> Result<Option<SubdivisionWitness>, CliError> {
    let opts = OracleOptions { size_guard: Some(guard), ..Default::default() };
    Ok(find_induced_subdivision(g, h, &opts)?)
}

fn push_membership(cert: &mut Certificate, name: &str, witness: Option<&SubdivisionWitness>, free: bool) {
    cert.push("result", if free { "free" } else { "contains" });
    cert.push(&format!("{name}*-free"), free);
    if let Some(w) = witness {
        cert.push_witness(w);
    }
}

fn recognize(g: &Graph, format: Format, spec: &PatternSpec, guard: usize) -> Result<(Certificate, i32), CliError> {
    let mut cert = Certificate::new("recognize");
    cert.push_input(g, format);
    cert.push("pattern", spec.words());
    cert.push("size-guard", guard);
    let h = spec.pattern();
    let witness = if *spec == PatternSpec::Paw {
        cert.push("method", "structure");
        match classify_paw(g)?.offending() {
            None => None,
            Some(c) => match &c.kind {
                ComponentKind::NotPawStarFree(Some(w)) => Some((**w).clone()),
                _ => Some(
                    oracle(g, &h, guard)?
                        .ok_or_else(|| CliError::Internal("paw classification and oracle disagree".into()))?,
                ),
            },
        }
    } else {
        cert.push("method", "oracle");
        oracle(g, &h, guard)?
    };
    push_membership(&mut cert, &h.name, witness.as_ref(), witness.is_none());
    Ok((cert, if witness.is_none() { 0 } else { 1 }))
}

fn not_in_class(cert: &mut Certificate, w: Option<&SubdivisionWitness>) {
    cert.push("result", "not-in-class");
    if let Some(w) = w {
        cert.push_witness(w);
    }
}

fn class_bound(class: ColorClass, omega: usize) -> usize {
    match class {
        ColorClass::Paw => paw_bound(omega),
        ColorClass::Bull => omega * omega,
    }
}

fn class_name(class: ColorClass) -> &'static str {
    match class {
        ColorClass::Paw => "paw",
        ColorClass::Bull => "bull",
    }
}

fn color(g: &Graph, format: Format, class: ColorClass) -> Result<(Certificate, i32), CliError> {
    let mut cert = Certificate::new("color");
    cert.push_input(g, format);
    cert.push("class", class_name(class));
    let result = match class {
        ColorClass::Paw => color_paw_star_free(g),
        ColorClass::Bull => color_bull_star_free(g),
    };
    match result {
        Ok(c) => {
            let omega = clique_number(g).0;
            cert.push("result", "colored");
            cert.push("omega", omega);
            cert.push("bound", class_bound(class, omega));
            cert.push("colors", c.num_colors());
            cert.push("coloring", join(c.colors()));
            Ok((cert, 0))
        }
        Err(Error::NotInClass { witness, .. }) => {
            let w = match witness {
                Some(w) => Some(*w),
                None if g.n() <= MEMBERSHIP_GUARD => oracle(g, &pattern_of(class), MEMBERSHIP_GUARD)?,
                None => None,
            };
            not_in_class(&mut cert, w.as_ref());
            Ok((cert, 1))
        }
        Err(e) => Err(e.into()),
    }
}

fn pattern_of(class: ColorClass) -> Pattern {
    match class {
        ColorClass::Paw => Pattern::paw(),
        ColorClass::Bull => Pattern::bull(),
    }
}

fn decompose(g: &Graph, format: Format) -> Result<(Certificate, i32), CliError> {
    let mut cert = Certificate::new("decompose");
    cert.push_input(g, format);
    if g.n() <= MEMBERSHIP_GUARD {
        if let Some(w) = oracle(g, &Pattern::bull(), MEMBERSHIP_GUARD)? {
            not_in_class(&mut cert, Some(&w));
            return Ok((cert, 1));
        }
    }
    match decompose_bull(g)? {
        DecompositionResult::Basic => cert.push("result", "basic"),
        DecompositionResult::HomogeneousSet(s) => {
            cert.push("result", "homogeneous-set");
            cert.push("set", join_set(&s));
        }
        DecompositionResult::CutVertex(v) => {
            cert.push("result", "cut-vertex");
            cert.push("vertex", v);
        }
    }
    Ok((cert, 0))
}

fn branch_name(b: &InductionBranch) -> String {
    match b {
        InductionBranch::Easy { r } => format!("easy(r={r})"),
        InductionBranch::HardTypeTwo => "hard-type-two".into(),
        InductionBranch::HardCommonNeighbor { d } => format!("hard-common-neighbor(d={d})"),
        InductionBranch::HardSplit { adjacent } => format!("hard-split(adjacent={adjacent})"),
    }
}

/// Parameters of `extract-alloy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlloyRequest {
    pub m: usize,
    pub n: usize,
    pub alpha: Option<usize>,
    pub beta: usize,
    pub root: usize,
    pub relaxed: bool,
    pub base_case: bool,
}

fn extract(g: &Graph, format: Format, req: &AlloyRequest, budget: Budget) -> Result<(Certificate, i32), CliError> {
    let &AlloyRequest { m, n, beta, root, relaxed, base_case, .. } = req;
    g.check_vertex(root)?;
    if base_case && n != 0 {
        return Err(CliError::Input("--base-case builds an (m)_0-alloy; use --n 0".into()));
    }
    let (alpha, source) = match req.alpha {
        Some(a) => (a, "given"),
        None => {
            let l = local_chromatic_number(g, budget);
            if !l.exact {
                return Err(CliError::Budget("local chromatic number not exact within budget".into()));
            }
            (l.value.max(1), "computed")
        }
    };
    let mut params = AlloyParams::new(m, alpha, beta).with_budget(budget);
    if relaxed {
        params = params.relaxed();
    }
    let ex = if base_case {
        Extraction { rounds: vec![alloy_base_case(g, root, &params)?], branches: Vec::new(), betas: vec![beta] }
    } else {
        extract_alloy(g, root, n, &params)?
    };
    let a = ex.alloy();
    let mut cert = Certificate::new("extract-alloy");
    cert.push_input(g, format);
    cert.push("m", m);
    cert.push("n", n);
    cert.push("alpha", alpha);
    cert.push("alpha-source", source);
    cert.push("beta", beta);
    cert.push("check", if relaxed { "relaxed" } else { "strict" });
    cert.push("entry", if base_case { "base-case" } else { "extract" });
    cert.push("root", root);
    cert.push("betas", join(&ex.betas));
    cert.push(
        "branches",
        std::iter::once("base".to_owned()).chain(ex.branches.iter().map(branch_name)).collect::<Vec<_>>().join(" "),
    );
    cert.push("result", "alloy");
    cert.push("hook", a.x);
    cert.push("necklace", join_set(&a.necklace));
    cert.push("attached", join_set(&a.attached));
    cert.push("potential", a.potential);
    if let Some(w) = &a.witness {
        cert.push_witness(w);
    }
    Ok((cert, 0))
}

/// Re-checks a certificate's payload against `g`.
pub fn validate(cert: &Certificate, g: &Graph, budget: Budget) -> Result<(), String> {
    cert.check_input(g)?;
    let s = |e: CliError| e.to_string();
    match cert.command() {
        Some("recognize") => {
            let spec = PatternSpec::parse(&cert.require("pattern").map_err(s)?.split_whitespace().collect::<Vec<_>>())
                .map_err(s)?;
            let h = spec.pattern();
            let guard = cert.require_usize("size-guard").map_err(s)?;
            let free = cert.require(&format!("{}*-free", h.name)).map_err(s)?;
            match (free, cert.witness().map_err(s)?) {
                ("false", Some(w)) => check_witness(g, &h, &w),
                ("true", None) => {
                    if spec == PatternSpec::Paw && !classify_paw(g).map_err(|e| e.to_string())?.is_paw_star_free() {
                        return Err("paw classification finds an offending component".into());
                    }
                    if g.n() <= guard || spec != PatternSpec::Paw {
                        if let Some(w) = oracle(g, &h, guard).map_err(s)? {
                            return Err(format!("oracle finds a subdivision at {:?}", w.branch_map));
                        }
                    }
                    Ok(())
                }
                _ => Err("membership flag and witness disagree".into()),
            }
        }
        Some("color") => {
            let class = match cert.require("class").map_err(s)? {
                "paw" => ColorClass::Paw,
                "bull" => ColorClass::Bull,
                c => return Err(format!("unknown class {c}")),
            };
            match cert.require("result").map_err(s)? {
                "colored" => check_coloring(cert, g, class, budget),
                "not-in-class" => match cert.witness().map_err(s)? {
                    Some(w) => check_witness(g, &pattern_of(class), &w),
                    None => Err("not-in-class claim without a witness".into()),
                },
                r => Err(format!("unknown result {r}")),
            }
        }
        Some("decompose") => {
            let result = match cert.require("result").map_err(s)? {
                "basic" => DecompositionResult::Basic,
                "homogeneous-set" => {
                    DecompositionResult::HomogeneousSet(id_set(cert.require("set").map_err(s)?).map_err(s)?)
                }
                "cut-vertex" => DecompositionResult::CutVertex(cert.require_usize("vertex").map_err(s)?),
                "not-in-class" => {
                    return match cert.witness().map_err(s)? {
                        Some(w) => check_witness(g, &Pattern::bull(), &w),
                        None => Err("not-in-class claim without a witness".into()),
                    }
                }
                r => return Err(format!("unknown result {r}")),
            };
            match &result {
                DecompositionResult::HomogeneousSet(set) => set.check_range(g.n()).map_err(|e| e.to_string())?,
                DecompositionResult::CutVertex(v) => g.check_vertex(*v).map_err(|e| e.to_string())?,
                DecompositionResult::Basic => {}
            }
            if result.validate(g) {
                Ok(())
            } else {
                Err(format!("decomposition `{result}` does not hold"))
            }
        }
        Some("extract-alloy") => check_alloy(cert, g, budget).map_err(s)?,
        Some(c) => Err(format!("no validator for `{c}` certificates")),
        None => Err("certificate has no command".into()),
    }
}

fn check_witness(g: &Graph, h: &Pattern, w: &SubdivisionWitness) -> Result<(), String> {
    let in_range = w.vertex_set().iter().all(|v| v < g.n());
    if in_range && w.branch_map.len() == h.graph.n() && verify_witness(g, h, w) {
        Ok(())
    } else {
        Err(format!("witness is not an induced subdivision of the {}", h.name))
    }
}

fn check_coloring(cert: &Certificate, g: &Graph, class: ColorClass, budget: Budget) -> Result<(), String> {
    let s = |e: CliError| e.to_string();
    let colors = ids(cert.require("coloring").map_err(s)?).map_err(s)?;
    if colors.len() != g.n() {
        return Err(format!("coloring has {} entries for {} vertices", colors.len(), g.n()));
    }
    let c = Coloring::new(colors);
    if let Some((u, v)) = c.conflict(g) {
        return Err(format!("edge {u}-{v} is monochromatic"));
    }
    let omega = clique_number(g).0;
    let used = c.num_colors();
    if cert.require_usize("omega").map_err(s)? != omega {
        return Err(format!("clique number is {omega}"));
    }
    if cert.require_usize("colors").map_err(s)? != used {
        return Err(format!("coloring uses {used} colors"));
    }
    if cert.require_usize("bound").map_err(s)? != class_bound(class, omega) || used > class_bound(class, omega) {
        return Err(format!("{used} colors exceed the bound {} at ω = {omega}", class_bound(class, omega)));
    }
    if class == ColorClass::Paw {
        let chi = chromatic_number(g, budget);
        if chi.exact && chi.value != used {
            return Err(format!("paw*-free coloring uses {used} colors but χ = {}", chi.value));
        }
    }
    Ok(())
}

fn check_alloy(cert: &Certificate, g: &Graph, budget: Budget) -> Result<Result<(), String>, CliError> {
    let x0 = cert.require_usize("root")?;
    let a = Alloy {
        x0,
        x: cert.require_usize("hook")?,
        necklace: id_set(cert.require("necklace")?)?,
        attached: id_set(cert.require("attached")?)?,
        m: cert.require_usize("m")?,
        n: cert.require_usize("n")?,
        potential: cert.require_usize("potential")?,
        witness: cert.witness()?,
    };
    for s in [&a.necklace, &a.attached] {
        if s.check_range(g.n()).is_err() {
            return Ok(Err("alloy vertex out of range".into()));
        }
    }
    if g.check_vertex(a.x0).is_err() || g.check_vertex(a.x).is_err() {
        return Ok(Err("alloy root or hook out of range".into()));
    }
    let beta = cert.require_usize("beta")?;
    if a.potential <= beta {
        return Ok(Err(format!("potential {} does not exceed β = {beta}", a.potential)));
    }
    let check = validate_alloy(g, &a, budget);
    if !check.is_valid() {
        return Ok(Err(check.diagnostics.join("; ")));
    }
    if let Some(w) = &a.witness {
        let h = Pattern::necklace(&vec![a.m; a.n + 1])?;
        let in_range = w.vertex_set().iter().all(|v| v < g.n());
        if !in_range || w.vertex_set() != a.necklace || !verify_witness_pinned(g, &h, w, &h.pins(a.x0, a.x)) {
            return Ok(Err("recorded witness does not embed the necklace onto the necklace part".into()));
        }
    }
    Ok(Ok(()))
}

/// Validates `cert` and renders the verdict; exit code 1 on failure.
pub fn verify(cert: &Certificate, g: Option<&Graph>, budget: Budget) -> Result<(Certificate, i32), CliError> {
    let mut out = Certificate::new("verify");
    out.push("certificate-command", cert.command().unwrap_or("unknown"));
    let verdict = match (cert.command(), g) {
        (Some("sweep"), _) => sweep::verify_sweep(cert, budget)?,
        (_, Some(g)) => {
            out.push("input-sha256", crate::cert::digest(g));
            validate(cert, g, budget)
        }
        (_, None) => Err("no input graph".into()),
    };
    match verdict {
        Ok(()) => {
            out.push("validation", "ok");
            Ok((out, 0))
        }
        Err(e) => {
            out.push("validation", "failed");
            out.push("reason", e);
            Ok((out, 1))
        }
    }
}
