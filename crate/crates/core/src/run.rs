//! Running strategies on a system, checking results and reporting.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{extract_reduced_gb, janet_basis_with, EngineOptions, RunStats, Strategy};
use crate::families::Family;
use crate::oracle::{buchberger_reduced_gb, certify_against, CertificateReport};
use crate::poly::{OrderKind, Polynomial};
use crate::system::{parse_system, render_polys, SystemFile};
use crate::{Error, Result};

/// Which basis `solve` prints.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputKind {
    #[default]
    Janet,
    Groebner,
    Both,
}

impl FromStr for OutputKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<OutputKind> {
        match s.to_ascii_lowercase().as_str() {
            "janet" => Ok(OutputKind::Janet),
            "groebner" => Ok(OutputKind::Groebner),
            "both" => Ok(OutputKind::Both),
            _ => Err(Error::UnknownOutputKind(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub strategies: Vec<Strategy>,
    pub order: Option<OrderKind>,
    pub verify: bool,
    /// Applies to each strategy run separately.
    pub timeout: Option<Duration>,
}

impl Default for SolveOptions {
    fn default() -> SolveOptions {
        SolveOptions { strategies: vec![Strategy::StrategyIILow], order: None, verify: false, timeout: None }
    }
}

/// Parses a `--strategy` value; `all` selects every strategy.
pub fn parse_strategies(s: &str) -> Result<Vec<Strategy>> {
    if s.eq_ignore_ascii_case("all") {
        Ok(Strategy::ALL.to_vec())
    } else {
        Ok(vec![s.parse()?])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    Completed,
    Timeout,
}

impl fmt::Display for RunStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RunStatus::Completed => "completed",
            RunStatus::Timeout => "timeout",
        })
    }
}

#[derive(Clone, Debug)]
pub struct StrategyRun {
    pub strategy: Strategy,
    pub status: RunStatus,
    pub stats: RunStats,
    /// Present when the run completed.
    pub basis: Option<Vec<Polynomial>>,
    /// Empty unless verification was requested.
    pub certificates: Vec<CertificateReport>,
}

impl StrategyRun {
    pub fn certified(&self) -> bool {
        self.certificates.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub name: String,
    pub system: SystemFile,
    pub runs: Vec<StrategyRun>,
    /// Whether every completed run produced the same basis.
    pub bases_agree: bool,
}

/// Process exit status of a solve or bench invocation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    CertificateFailure,
    Timeout,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::CertificateFailure => 2,
            Outcome::Timeout => 3,
        }
    }

    /// The more severe of two outcomes.
    pub fn combine(self, other: Outcome) -> Outcome {
        use Outcome::*;
        match (self, other) {
            (CertificateFailure, _) | (_, CertificateFailure) => CertificateFailure,
            (Timeout, _) | (_, Timeout) => Timeout,
            _ => Success,
        }
    }
}

#[derive(Serialize)]
struct StatsRecord<'a> {
    system: &'a str,
    strategy: &'static str,
    status: RunStatus,
    #[serde(flatten)]
    stats: &'a RunStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    certified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificates: Option<&'a [CertificateReport]>,
}

pub const STATS_CSV_PREFIX: &str = "system,strategy,status,";

impl SolveReport {
    /// Certificate failures and disagreement between strategies take
    /// precedence over timeouts.
    pub fn outcome(&self) -> Outcome {
        let mut outcome = if self.bases_agree { Outcome::Success } else { Outcome::CertificateFailure };
        for run in &self.runs {
            let o = match run.status {
                RunStatus::Timeout => Outcome::Timeout,
                RunStatus::Completed if !run.certified() => Outcome::CertificateFailure,
                RunStatus::Completed => Outcome::Success,
            };
            outcome = outcome.combine(o);
        }
        outcome
    }

    /// The basis of the first completed run.
    pub fn janet_basis(&self) -> Option<&[Polynomial]> {
        self.runs.iter().find_map(|r| r.basis.as_deref())
    }

    pub fn reduced_gb(&self) -> Option<Vec<Polynomial>> {
        self.janet_basis().map(|b| extract_reduced_gb(b, self.system.order))
    }

    /// Canonical basis text: monic polynomials, one per line, ascending by
    /// leading monomial.
    pub fn render_output(&self, kind: OutputKind) -> String {
        let names = &self.system.variables;
        let Some(basis) = self.janet_basis() else {
            return String::new();
        };
        match kind {
            OutputKind::Janet => render_polys(names, basis),
            OutputKind::Groebner => render_polys(names, &self.reduced_gb().unwrap_or_default()),
            OutputKind::Both => format!(
                "# janet basis\n{}# reduced groebner basis\n{}",
                render_polys(names, basis),
                render_polys(names, &self.reduced_gb().unwrap_or_default())
            ),
        }
    }

    fn records(&self) -> impl Iterator<Item = StatsRecord<'_>> {
        let verified = self.runs.iter().any(|r| !r.certificates.is_empty());
        self.runs.iter().map(move |r| StatsRecord {
            system: &self.name,
            strategy: r.strategy.name(),
            status: r.status,
            stats: &r.stats,
            certified: verified.then(|| r.certified()),
            certificates: verified.then_some(r.certificates.as_slice()),
        })
    }

    pub fn stats_csv_header() -> String {
        format!("{STATS_CSV_PREFIX}{}", RunStats::CSV_HEADER)
    }

    /// CSV rows without header.
    pub fn stats_csv_rows(&self) -> Vec<String> {
        self.runs
            .iter()
            .map(|r| format!("{},{},{},{}", csv_field(&self.name), r.strategy.name(), r.status, r.stats.csv_row()))
            .collect()
    }

    pub fn stats_json(&self) -> serde_json::Value {
        serde_json::to_value(self.records().collect::<Vec<_>>()).expect("plain data")
    }

    /// Human-readable summary of failures, one line each.
    pub fn problems(&self) -> Vec<String> {
        let mut lines = Vec::new();
        if !self.bases_agree {
            lines.push(format!("{}: strategies produced different bases", self.name));
        }
        for run in &self.runs {
            if run.status == RunStatus::Timeout {
                lines.push(format!("{}: strategy {} timed out", self.name, run.strategy));
            }
            for cert in run.certificates.iter().filter(|c| !c.passed) {
                lines.push(format!("{}: strategy {}: {cert}", self.name, run.strategy));
            }
        }
        lines
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Runs the requested strategies on `system`, optionally certifying each
/// result with the Buchberger oracle.
pub fn solve(name: &str, system: &SystemFile, options: &SolveOptions) -> Result<SolveReport> {
    let system = match options.order {
        Some(kind) if kind != system.order.kind() => system.with_order(kind),
        _ => system.clone(),
    };
    let order = system.order;
    let engine_options = EngineOptions { timeout: options.timeout };
    let mut runs = Vec::with_capacity(options.strategies.len());
    for &strategy in &options.strategies {
        let run = match janet_basis_with(&system.polynomials, order, strategy, &engine_options, &mut |_| {}) {
            Ok(out) => StrategyRun {
                strategy,
                status: RunStatus::Completed,
                stats: out.stats,
                basis: Some(out.basis),
                certificates: Vec::new(),
            },
            Err(Error::Timeout { stats }) => StrategyRun {
                strategy,
                status: RunStatus::Timeout,
                stats: *stats,
                basis: None,
                certificates: Vec::new(),
            },
            Err(e) => return Err(e),
        };
        runs.push(run);
    }

    if options.verify && runs.iter().any(|r| r.basis.is_some()) {
        let input_gb = buchberger_reduced_gb(&system.polynomials, order)?;
        for run in &mut runs {
            if let Some(basis) = &run.basis {
                run.certificates = certify_against(&input_gb, basis, order)?;
            }
        }
    }

    let mut completed = runs.iter().filter_map(|r| r.basis.as_ref());
    let bases_agree = match completed.next() {
        Some(first) => completed.all(|b| b == first),
        None => true,
    };
    Ok(SolveReport { name: name.to_string(), system, runs, bases_agree })
}

/// One line of a bench spec file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BenchSource {
    Family(Family, usize),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchJob {
    pub source: BenchSource,
    pub strategies: Vec<Strategy>,
}

impl BenchJob {
    pub fn name(&self) -> String {
        match &self.source {
            BenchSource::Family(f, n) => format!("{f}-{n}"),
            BenchSource::File(p) => p.display().to_string(),
        }
    }

    pub fn load(&self) -> Result<SystemFile> {
        match &self.source {
            BenchSource::Family(f, n) => f.generate(*n),
            BenchSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
                parse_system(&text)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchSpec {
    pub jobs: Vec<BenchJob>,
    pub timeout: Option<Duration>,
    pub verify: bool,
}

/// Parses a bench spec file.
///
/// ```text
/// # directives apply to all jobs
/// timeout: 60
/// verify: true
/// cyclic 5              # all strategies
/// katsura-4 baseline II-low
/// file systems/foo.txt I
/// ```
///
/// Relative file paths resolve against `base_dir`.
pub fn parse_bench_spec(text: &str, base_dir: &Path) -> Result<BenchSpec> {
    let mut spec = BenchSpec { jobs: Vec::new(), timeout: None, verify: false };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line, column: 1, message };
        if let Some(v) = content.strip_prefix("timeout:") {
            let secs: f64 = v.trim().parse().map_err(|_| err(format!("bad timeout `{}`", v.trim())))?;
            if !(secs.is_finite() && secs > 0.0) {
                return Err(err("timeout must be positive".into()));
            }
            spec.timeout = Some(Duration::from_secs_f64(secs));
            continue;
        }
        if let Some(v) = content.strip_prefix("verify:") {
            spec.verify = v.trim().parse().map_err(|_| err(format!("bad verify flag `{}`", v.trim())))?;
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let (source, rest) = if words[0] == "file" {
            let path = words.get(1).ok_or_else(|| err("`file` needs a path".into()))?;
            (BenchSource::File(base_dir.join(path)), &words[2..])
        } else if let Some((name, n)) = words[0].rsplit_once('-').filter(|(_, n)| n.parse::<usize>().is_ok()) {
            (family_source(name, n).map_err(|e| err(e.to_string()))?, &words[1..])
        } else {
            let n = words.get(1).ok_or_else(|| err(format!("`{}` needs a size", words[0])))?;
            (family_source(words[0], n).map_err(|e| err(e.to_string()))?, &words[2..])
        };
        let strategies = if rest.is_empty() {
            Strategy::ALL.to_vec()
        } else {
            let mut all = Vec::new();
            for w in rest {
                for s in parse_strategies(w).map_err(|e| err(e.to_string()))? {
                    if !all.contains(&s) {
                        all.push(s);
                    }
                }
            }
            all
        };
        spec.jobs.push(BenchJob { source, strategies });
    }
    if spec.jobs.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            column: 1,
            message: "bench spec has no jobs".into(),
        });
    }
    Ok(spec)
}

fn family_source(name: &str, n: &str) -> Result<BenchSource> {
    let family: Family = name.parse()?;
    let n: usize = n.parse().map_err(|_| Error::UnknownFamily(format!("{name} {n}")))?;
    let (min, max) = family.bounds();
    if n < min || n > max {
        return Err(Error::FamilyParameter { family: family.name().into(), n, min, max });
    }
    Ok(BenchSource::Family(family, n))
}

/// Runs every job of a bench spec, at most `jobs` at a time. Reports come back
/// in spec order.
pub fn run_bench(spec: &BenchSpec, jobs: usize) -> Result<Vec<SolveReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Io { path: "<thread pool>".into(), message: e.to_string() })?;
    pool.install(|| {
        spec.jobs
            .par_iter()
            .map(|job| {
                let system = job.load()?;
                let options = SolveOptions {
                    strategies: job.strategies.clone(),
                    order: None,
                    verify: spec.verify,
                    timeout: spec.timeout,
                };
                solve(&job.name(), &system, &options)
            })
            .collect()
    })
}
