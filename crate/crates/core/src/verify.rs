//! Exhaustive classifier-vs-solver verification and the line-delimited report format.
//!
//! Report files hold one JSON object per line: a summary line first, then one line per
//! disagreement.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characterizations::{classify, Classification, Verdict};
use crate::error::{Error, Result};
use crate::game::{GraphId, GraphTopology, WeightConfig};
use crate::solver::{Outcome, Solver, DEFAULT_WEIGHT_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub weights: Vec<u32>,
    pub classifier: Verdict,
    pub rule: String,
    pub oracle: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub graph: GraphId,
    pub max_weight: u32,
    pub total: u64,
    pub winning: u64,
    pub losing: u64,
    pub unknown: u64,
    pub agreements: u64,
    pub disagreements: u64,
    pub duration_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub summary: ReportSummary,
    pub disagreements: Vec<Disagreement>,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }

    /// Unknown verdicts as a fraction of all configurations.
    pub fn unknown_fraction(&self) -> f64 {
        if self.summary.total == 0 {
            0.0
        } else {
            self.summary.unknown as f64 / self.summary.total as f64
        }
    }

    fn check_invariants(&self) -> Result<()> {
        let s = &self.summary;
        if s.total != s.winning + s.losing + s.unknown {
            return Err(Error::Report("total != winning + losing + unknown".into()));
        }
        if s.disagreements != self.disagreements.len() as u64 {
            return Err(Error::Report(format!(
                "summary counts {} disagreements, file has {}",
                s.disagreements,
                self.disagreements.len()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_weight: u32,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Per-edge solver cap; `max_weight` above it is a capacity error.
    pub weight_cap: u32,
}

impl VerifyOptions {
    pub fn new(max_weight: u32) -> Self {
        Self {
            max_weight,
            jobs: None,
            weight_cap: DEFAULT_WEIGHT_CAP,
        }
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = Some(jobs);
        self
    }
}

/// All configurations with every weight in `[1, max_weight]` (H1's `EF` also takes 0),
/// row-major: edge 0 varies slowest.
pub fn verification_configs(id: GraphId, max_weight: u32) -> Vec<Vec<u32>> {
    let ranges: Vec<(u32, u32)> = (0..4)
        .map(|e| {
            let lo = if id == GraphId::H1 && e == 3 { 0 } else { 1 };
            (lo, max_weight)
        })
        .collect();
    let mut out = vec![Vec::new()];
    for &(lo, hi) in &ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |w| {
                    let mut next = prefix.clone();
                    next.push(w);
                    next
                })
            })
            .collect();
    }
    out
}

enum Checked {
    Verdict(Classification, Outcome),
    Contradiction(Error),
}

/// Compares [`classify`] with the solver on every configuration up to `max_weight`.
///
/// Outside H1 an `Unknown` verdict counts as a disagreement. A rule contradiction aborts the
/// run with [`Error::Contradiction`] for the first offending configuration.
pub fn verify_graph(id: GraphId, options: &VerifyOptions) -> Result<VerificationReport> {
    if options.max_weight == 0 {
        return Err(Error::InvalidConfig("max weight must be positive".into()));
    }
    let solver = Solver::new(GraphTopology::catalog(id)).with_weight_cap(options.weight_cap);
    if options.max_weight > solver.weight_cap() {
        return Err(Error::Capacity(format!(
            "max weight {} above the solver cap of {}",
            options.max_weight,
            solver.weight_cap()
        )));
    }
    let started = Instant::now();
    let configs = verification_configs(id, options.max_weight);

    let run = || -> Result<Vec<Checked>> {
        configs
            .par_iter()
            .map(|w| {
                let config = WeightConfig::new(w.clone());
                let oracle = solver.solve(&config)?;
                Ok(match classify(id, &config) {
                    Ok(c) => Checked::Verdict(c, oracle),
                    Err(e @ Error::Contradiction { .. }) => Checked::Contradiction(e),
                    Err(e) => return Err(e),
                })
            })
            .collect()
    };
    let results = match options.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Capacity(e.to_string()))?
            .install(run)?,
        None => run()?,
    };

    let mut summary = ReportSummary {
        graph: id,
        max_weight: options.max_weight,
        total: 0,
        winning: 0,
        losing: 0,
        unknown: 0,
        agreements: 0,
        disagreements: 0,
        duration_ms: 0,
    };
    let mut disagreements = Vec::new();
    for (weights, checked) in configs.into_iter().zip(results) {
        let (classification, oracle) = match checked {
            Checked::Verdict(c, o) => (c, o),
            Checked::Contradiction(e) => return Err(e),
        };
        summary.total += 1;
        match classification.verdict {
            Verdict::Winning => summary.winning += 1,
            Verdict::Losing => summary.losing += 1,
            Verdict::Unknown => summary.unknown += 1,
        }
        let agrees = match classification.verdict.agrees_with(oracle) {
            Some(agrees) => agrees,
            None if id == GraphId::H1 => continue,
            None => false,
        };
        if agrees {
            summary.agreements += 1;
        } else {
            disagreements.push(Disagreement {
                weights,
                classifier: classification.verdict,
                rule: classification.rule.to_string(),
                oracle,
            });
        }
    }
    summary.disagreements = disagreements.len() as u64;
    summary.duration_ms = started.elapsed().as_millis() as u64;
    Ok(VerificationReport { summary, disagreements })
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

pub fn write_report<W: Write>(report: &VerificationReport, mut out: W) -> std::io::Result<()> {
    serde_json::to_writer(&mut out, &report.summary)?;
    writeln!(out)?;
    for d in &report.disagreements {
        serde_json::to_writer(&mut out, d)?;
        writeln!(out)?;
    }
    out.flush()
}

pub fn emit_report(report: &VerificationReport, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| io_error(path, e))?;
    write_report(report, BufWriter::new(file)).map_err(|e| io_error(path, e))
}

pub fn read_report<R: BufRead>(input: R) -> Result<VerificationReport> {
    let mut lines = input.lines().filter(|l| l.as_ref().map_or(true, |l| !l.trim().is_empty()));
    let first = lines
        .next()
        .ok_or_else(|| Error::Report("empty report".into()))?
        .map_err(|e| Error::Report(e.to_string()))?;
    let summary: ReportSummary = serde_json::from_str(&first).map_err(|e| Error::Report(e.to_string()))?;
    let disagreements = lines
        .map(|line| {
            let line = line.map_err(|e| Error::Report(e.to_string()))?;
            serde_json::from_str(&line).map_err(|e| Error::Report(e.to_string()))
        })
        .collect::<Result<Vec<Disagreement>>>()?;
    let report = VerificationReport { summary, disagreements };
    report.check_invariants()?;
    Ok(report)
}

pub fn load_report(path: &Path) -> Result<VerificationReport> {
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    read_report(BufReader::new(file))
}
