//! Exhaustive and sampled χ-bound sweeps over pattern-free graphs.

use chibound_core::bull::color_bull_star_free;
use chibound_core::census::{sample_star_free, star_free_census};
use chibound_core::exact::{chromatic_number, clique_number};
use chibound_core::necklace::necklace_bound;
use chibound_core::paw::{color_paw_star_free, paw_bound};
use chibound_core::{Budget, Error, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cert::{join, Certificate};
use crate::commands::PatternSpec;
use crate::error::CliError;

/// Rejected candidates allowed per sample before giving up.
pub const SAMPLE_ATTEMPTS: usize = 10_000;

/// Violations listed individually in the certificate.
const LISTED: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub pattern: PatternSpec,
    pub max_n: usize,
    pub check_bound: bool,
    pub samples: usize,
    pub sample_n: (usize, usize),
    pub seed: u64,
}

impl SweepConfig {
    fn bound_description(&self) -> String {
        if self.is_bull() {
            return "colors <= omega^2, chi <= omega^2 <= (2^2 * 4)^(omega - 1)".into();
        }
        match &self.pattern {
            PatternSpec::Paw => "colors = chi <= f(omega), f(2) = 3, f(w) = w".into(),
            PatternSpec::Bull => unreachable!("handled above"),
            PatternSpec::Necklace(l) => {
                let (m, n) = necklace_params(l);
                format!("chi <= (2^{} * {})^(omega - 1)", n + 1, m + 3)
            }
        }
    }

    fn is_bull(&self) -> bool {
        matches!(&self.pattern, PatternSpec::Bull) || matches!(&self.pattern, PatternSpec::Necklace(l) if l == &[1, 1])
    }
}

/// `(max m_i, n)`: a subdivision of the uniform `(max m_i)_n` necklace is
/// also one of the `(m_0..m_n)` necklace, so its bound applies.
fn necklace_params(lengths: &[usize]) -> (usize, usize) {
    (lengths.iter().copied().max().unwrap_or(1), lengths.len() - 1)
}

fn exact_chi(g: &Graph, budget: Budget) -> Result<usize, CliError> {
    let r = chromatic_number(g, budget);
    if r.exact {
        Ok(r.value)
    } else {
        Err(CliError::Budget(format!("χ of a {}-vertex graph not exact within budget", g.n())))
    }
}

/// A violation message for `g`, if any.
pub fn check_graph(cfg: &SweepConfig, g: &Graph, budget: Budget) -> Result<Option<String>, CliError> {
    let omega = clique_number(g).0;
    let chi = exact_chi(g, budget)?;
    let describe = |what: String| Some(format!("{what} on {:?}", g));
    if cfg.is_bull() {
        let c = match color_bull_star_free(g) {
            Ok(c) => c,
            Err(Error::NotInClass { .. }) => return Ok(describe("bull*-free graph rejected by the colorer".into())),
            Err(e) => return Err(e.into()),
        };
        let used = c.num_colors();
        let f = necklace_bound(1, 1, omega).unwrap_or(u128::MAX);
        if !c.is_proper(g) || used > omega * omega || chi > omega * omega || (omega * omega) as u128 > f {
            return Ok(describe(format!("colors {used}, χ {chi}, ω {omega}, f(ω) {f}")));
        }
        return Ok(None);
    }
    match &cfg.pattern {
        PatternSpec::Paw => {
            let c = match color_paw_star_free(g) {
                Ok(c) => c,
                Err(Error::NotInClass { .. }) => return Ok(describe("paw*-free graph rejected by the colorer".into())),
                Err(e) => return Err(e.into()),
            };
            let used = c.num_colors();
            if !c.is_proper(g) || used != chi || used > paw_bound(omega) {
                return Ok(describe(format!("colors {used}, χ {chi}, ω {omega}, f(ω) {}", paw_bound(omega))));
            }
        }
        PatternSpec::Necklace(l) => {
            let (m, n) = necklace_params(l);
            let f = necklace_bound(m, n, omega).unwrap_or(u128::MAX);
            if chi as u128 > f {
                return Ok(describe(format!("χ {chi} exceeds f(ω = {omega}) = {f}")));
            }
        }
        PatternSpec::Bull => unreachable!("handled above"),
    }
    Ok(None)
}

/// The swept graphs: every census graph with at least one vertex, then the
/// samples. Returns the census level sizes too.
pub fn sweep_graphs(cfg: &SweepConfig) -> Result<(Vec<usize>, Vec<Graph>), CliError> {
    let (lo, hi) = cfg.sample_n;
    if cfg.samples > 0 && (lo == 0 || lo > hi) {
        return Err(CliError::Input(format!("sample sizes {lo}..={hi} are not a nonempty positive range")));
    }
    let h = cfg.pattern.pattern();
    let census = star_free_census(&h, cfg.max_n);
    let counts = census.iter().map(Vec::len).collect();
    let mut graphs: Vec<Graph> = census.into_iter().skip(1).flatten().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..cfg.samples {
        let n = rng.gen_range(lo..=hi);
        let g = sample_star_free(&h, n, &mut rng, SAMPLE_ATTEMPTS)?.ok_or_else(|| {
            CliError::Budget(format!(
                "sample {i}: no {}*-free graph on {n} vertices in {SAMPLE_ATTEMPTS} attempts",
                h.name
            ))
        })?;
        graphs.push(g);
    }
    Ok((counts, graphs))
}

/// Checks every graph on `threads` workers; results are in input order.
pub fn check_all(cfg: &SweepConfig, graphs: &[Graph], threads: usize, budget: Budget) -> Result<Vec<String>, CliError> {
    let chunk = graphs.len().div_ceil(threads.max(1)).max(1);
    let results: Vec<Result<Vec<Option<String>>, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = graphs
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|g| check_graph(cfg, g, budget)).collect()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
    });
    let mut violations = Vec::new();
    for r in results {
        violations.extend(r?.into_iter().flatten());
    }
    Ok(violations)
}

pub fn run_sweep(cfg: &SweepConfig, threads: usize, budget: Budget) -> Result<(Certificate, i32), CliError> {
    let (counts, graphs) = sweep_graphs(cfg)?;
    let mut cert = Certificate::new("sweep");
    cert.push("pattern", cfg.pattern.words());
    cert.push("max-n", cfg.max_n);
    cert.push("check-bound", cfg.check_bound);
    cert.push("samples", cfg.samples);
    cert.push("sample-n", format!("{} {}", cfg.sample_n.0, cfg.sample_n.1));
    cert.push("seed", cfg.seed);
    cert.push("census", join(&counts));
    cert.push("graphs", graphs.len());
    if !cfg.check_bound {
        return Ok((cert, 0));
    }
    cert.push("bound", cfg.bound_description());
    let violations = check_all(cfg, &graphs, threads, budget)?;
    cert.push("violations", violations.len());
    for v in violations.iter().take(LISTED) {
        cert.push("violation", v);
    }
    cert.push("summary", format!("{} violations", violations.len()));
    Ok((cert, if violations.is_empty() { 0 } else { 1 }))
}

/// Re-runs the recorded sweep and compares documents.
pub fn verify_sweep(cert: &Certificate, budget: Budget) -> Result<Result<(), String>, CliError> {
    let words: Vec<&str> = cert.require("pattern")?.split_whitespace().collect();
    let sizes: Vec<usize> = crate::cert::ids(cert.require("sample-n")?)?;
    if sizes.len() != 2 {
        return Err(CliError::Input("sample-n must hold two sizes".into()));
    }
    let cfg = SweepConfig {
        pattern: PatternSpec::parse(&words)?,
        max_n: cert.require_usize("max-n")?,
        check_bound: cert.require("check-bound")? == "true",
        samples: cert.require_usize("samples")?,
        sample_n: (sizes[0], sizes[1]),
        seed: cert.require("seed")?.parse().map_err(|_| CliError::Input("seed is not a number".into()))?,
    };
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let (again, _) = run_sweep(&cfg, threads, budget)?;
    Ok(if again == *cert { Ok(()) } else { Err("re-running the sweep gives a different document".into()) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(pattern: PatternSpec, max_n: usize) -> SweepConfig {
        SweepConfig { pattern, max_n, check_bound: true, samples: 0, sample_n: (12, 15), seed: 0 }
    }

    #[test]
    fn paw_sweep_is_clean() {
        let (cert, code) = run_sweep(&cfg(PatternSpec::Paw, 6), 2, Budget::default()).unwrap();
        assert_eq!(code, 0);
        assert_eq!(cert.get("summary"), Some("0 violations"));
    }

    #[test]
    fn thread_count_does_not_change_the_document() {
        let mut c = cfg(PatternSpec::Necklace(vec![2, 1]), 6);
        c.samples = 3;
        c.sample_n = (7, 8);
        let a = run_sweep(&c, 1, Budget::default()).unwrap();
        let b = run_sweep(&c, 4, Budget::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(verify_sweep(&a.0, Budget::default()).unwrap(), Ok(()));
    }

    #[test]
    fn necklace_one_one_is_checked_as_the_bull() {
        assert!(cfg(PatternSpec::Necklace(vec![1, 1]), 5).is_bull());
        assert_eq!(necklace_params(&[3, 1, 2]), (3, 2));
    }

    #[test]
    fn bad_sample_range() {
        let mut c = cfg(PatternSpec::Paw, 3);
        c.samples = 1;
        c.sample_n = (5, 4);
        assert!(matches!(sweep_graphs(&c), Err(CliError::Input(_))));
    }
}
