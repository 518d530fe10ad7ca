//! Verification reports and their JSON / text rendering.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{VerifyError, EXACT_PATH_TOL};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckRow {
    pub fn new(name: &str, pass: bool, detail: String) -> CheckRow {
        CheckRow { name: name.to_string(), pass, detail }
    }
}

/// One face dimension `k` of the main identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KRow {
    pub k: usize,
    /// Exact expected value as `"p/q"`.
    pub expected: String,
    pub estimate: f64,
    pub stderr: f64,
    /// `None` on the exact path, or when the standard error vanishes and
    /// the estimate misses.
    pub z: Option<f64>,
    /// `"exact"` or `"monte_carlo"`.
    pub path: String,
    pub pass: bool,
}

impl KRow {
    pub(crate) fn new(k: usize, expected: &Rational, estimate: f64, stderr: f64, exact: bool) -> KRow {
        KRow { k, expected: rational::format(expected), estimate, stderr, z: None, path: path_label(exact).to_string(), pass: false }
    }

    fn evaluate(&mut self, zmax: f64, exact_tol: f64) -> Result<(), VerifyError> {
        (self.z, self.pass) = judge(&self.expected, self.estimate, self.stderr, &self.path, zmax, exact_tol)?;
        Ok(())
    }
}

/// One flat `x` of the per-flat identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatRow {
    /// Hyperplanes containing the flat.
    pub hyperplanes: Vec<usize>,
    /// Dimension in the original ambient space.
    pub dim: usize,
    /// `|μ(x)|` as `"p/q"`.
    pub expected: String,
    pub estimate: f64,
    pub stderr: f64,
    pub z: Option<f64>,
    pub path: String,
    pub pass: bool,
}

impl FlatRow {
    pub(crate) fn new(hyperplanes: Vec<usize>, dim: usize, expected: &Rational, estimate: f64, stderr: f64, exact: bool) -> FlatRow {
        FlatRow {
            hyperplanes,
            dim,
            expected: rational::format(expected),
            estimate,
            stderr,
            z: None,
            path: path_label(exact).to_string(),
            pass: false,
        }
    }

    pub(crate) fn evaluate(&mut self, zmax: f64, exact_tol: f64) -> Result<(), VerifyError> {
        (self.z, self.pass) = judge(&self.expected, self.estimate, self.stderr, &self.path, zmax, exact_tol)?;
        Ok(())
    }
}

fn path_label(exact: bool) -> &'static str {
    if exact {
        "exact"
    } else {
        "monte_carlo"
    }
}

fn judge(expected: &str, estimate: f64, stderr: f64, path: &str, zmax: f64, exact_tol: f64) -> Result<(Option<f64>, bool), VerifyError> {
    let want = rational::parse(expected).map_err(|e| VerifyError::Report(e.to_string()))?;
    let diff = estimate - rational::to_f64(&want);
    match path {
        "exact" => Ok((None, diff.abs() <= exact_tol)),
        "monte_carlo" if stderr > 0.0 => {
            let z = diff / stderr;
            Ok((Some(z), z.abs() <= zmax))
        }
        "monte_carlo" if diff.abs() <= exact_tol => Ok((Some(0.0), true)),
        "monte_carlo" => Ok((None, false)),
        other => Err(VerifyError::Report(format!("unknown path {other:?}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub exact_checks_ms: f64,
    pub estimation_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub arrangement: String,
    pub d: usize,
    pub r: usize,
    pub hyperplanes: usize,
    pub regions: usize,
    pub essentialized: bool,
    /// `d − r`.
    pub index_shift: usize,
    /// Poset-rank characteristic polynomial, highest degree first.
    pub charpoly: Vec<String>,
    pub method: String,
    pub samples_per_region: u64,
    pub seed: u64,
    pub tol: f64,
    pub zmax: f64,
    pub exact_tol: f64,
    pub checks: Vec<CheckRow>,
    /// Rows for `k = d, …, 0`.
    pub theorem: Vec<KRow>,
    pub flats: Vec<FlatRow>,
    pub failing_k: Vec<usize>,
    /// Indices into `flats`.
    pub failing_flats: Vec<usize>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl VerificationReport {
    /// Recomputes every row verdict, the failure lists and the overall
    /// verdict from the stored expected values and estimates.
    pub fn reevaluate(&mut self) -> Result<(), VerifyError> {
        let exact_tol = if self.exact_tol > 0.0 { self.exact_tol } else { EXACT_PATH_TOL };
        for row in &mut self.theorem {
            row.evaluate(self.zmax, exact_tol)?;
        }
        for row in &mut self.flats {
            row.evaluate(self.zmax, exact_tol)?;
        }
        self.failing_k = self.theorem.iter().filter(|r| !r.pass).map(|r| r.k).collect();
        self.failing_flats = self.flats.iter().enumerate().filter(|(_, r)| !r.pass).map(|(i, _)| i).collect();
        self.pass =
            self.checks.iter().all(|c| c.pass) && !self.theorem.is_empty() && self.failing_k.is_empty() && self.failing_flats.is_empty();
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<VerificationReport, VerifyError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "arrangement {}: d = {}, r = {}, {} hyperplanes, {} regions",
            self.arrangement, self.d, self.r, self.hyperplanes, self.regions
        );
        let _ = writeln!(out, "chi(t) coefficients (highest first): {}", self.charpoly.join(" "));
        if self.essentialized {
            let _ = writeln!(out, "essentialized, index shift {}", self.index_shift);
        }
        let _ = writeln!(out, "method {}, {} samples/region, seed {}, zmax {}", self.method, self.samples_per_region, self.seed, self.zmax);
        let _ = writeln!(out);
        for c in &self.checks {
            let _ = writeln!(out, "{:<26} {:<4}  {}", c.name, verdict(c.pass), c.detail);
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{:>3} {:>10} {:>14} {:>12} {:>9}", "k", "expected", "estimate", "stderr", "z");
        for r in &self.theorem {
            let _ = writeln!(
                out,
                "{:>3} {:>10} {:>14.9} {:>12.3e} {:>9}  {}",
                r.k,
                r.expected,
                r.estimate,
                r.stderr,
                fmt_z(r.z),
                verdict(r.pass)
            );
        }
        if !self.flats.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "{:<20} {:>3} {:>8} {:>14} {:>12} {:>9}", "flat", "dim", "|mu|", "estimate", "stderr", "z");
            for f in &self.flats {
                let name = format!("{:?}", f.hyperplanes);
                let _ = writeln!(
                    out,
                    "{:<20} {:>3} {:>8} {:>14.9} {:>12.3e} {:>9}  {}",
                    name,
                    f.dim,
                    f.expected,
                    f.estimate,
                    f.stderr,
                    fmt_z(f.z),
                    verdict(f.pass)
                );
            }
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "timings: checks {:.1} ms, estimation {:.1} ms, total {:.1} ms",
                t.exact_checks_ms, t.estimation_ms, t.total_ms
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "overall: {}", verdict(self.pass));
        out
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn fmt_z(z: Option<f64>) -> String {
    z.map_or_else(|| "-".to_string(), |z| format!("{z:.3}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for ReportFormat {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            _ => Err(VerifyError::BadSpec(format!("unknown format {s:?}"))),
        }
    }
}

pub fn emit_report(report: &VerificationReport, format: ReportFormat, out: &mut dyn Write) -> Result<(), VerifyError> {
    let body = match format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Text => report.to_text(),
    };
    out.write_all(body.as_bytes())?;
    Ok(())
}
