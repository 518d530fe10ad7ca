//! End-to-end checks that the projection volumes of all regions add up to
//! the absolute coefficients of the characteristic polynomial.
//!
//! [`verify_main_theorem`] runs the exact combinatorial cross-checks first
//! and only samples when they all hold. Sampling happens in the essential
//! part of the arrangement; a lineality space of dimension `d − r` shifts
//! every face index by `d − r`.

mod analysis;
mod generate;
mod report;

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::{enumerate_regions, Arrangement, ArrangementError, Region};
use crate::cone::{self, Cone, ConeError, Mask, DEFAULT_TOL};
use crate::lattice::{IntersectionLattice, LatticeError};
use crate::rational::{self, Rational, Sign};
use crate::zonotope::{self, ZonotopeError};

pub use analysis::{analyze, AnalysisReport, FaceInfo, FlatInfo, ZonotopeInfo};
pub use generate::{generate, GeneratorSpec};
pub use report::{emit_report, CheckRow, FlatRow, KRow, ReportFormat, Timings, VerificationReport};

/// Absolute tolerance for the closed-form (rank ≤ 2) path.
pub const EXACT_PATH_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("bad generator spec: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Zonotope(#[from] ZonotopeError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("arrangement has no hyperplanes")]
    Empty,
    #[error("exact path needs rank at most 2 (got {0})")]
    ExactUnavailable(usize),
    #[error("malformed report: {0}")]
    Report(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Closed form when the essential rank is at most 2, sampling otherwise.
    #[default]
    Auto,
    MonteCarlo,
    Exact,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::MonteCarlo => "monte_carlo",
            Method::Exact => "exact",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Method::Auto),
            "mc" | "monte_carlo" | "monte-carlo" => Ok(Method::MonteCarlo),
            "exact" => Ok(Method::Exact),
            _ => Err(VerifyError::BadSpec(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Samples per region.
    pub samples: u64,
    pub seed: u64,
    pub tol: f64,
    /// Largest accepted `|z|`.
    pub zmax: f64,
    pub method: Method,
    /// Record wall-clock timings in the report (makes it non-reproducible).
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { samples: 100_000, seed: 0, tol: DEFAULT_TOL, zmax: 4.0, method: Method::Auto, timings: false }
    }
}

/// Per-region volume shares, in the essential space.
struct RegionTally {
    /// `ν̂_k` for `k = 0..=r`.
    by_dim: Vec<f64>,
    /// Share per flat id of the essential lattice.
    by_flat: BTreeMap<usize, f64>,
}

struct Tallies {
    regions: Vec<RegionTally>,
    exact: bool,
}

/// Everything computed once per arrangement.
struct Prepared {
    ess: crate::arrangement::Essentialization,
    lattice: IntersectionLattice,
    regions: Vec<Region>,
}

fn prepare(arr: &Arrangement) -> Result<Prepared, VerifyError> {
    if arr.is_empty() {
        return Err(VerifyError::Empty);
    }
    let ess = arr.essentialize();
    let lattice = IntersectionLattice::build(&ess.arrangement);
    let regions = enumerate_regions(&ess.arrangement);
    Ok(Prepared { ess, lattice, regions })
}

/// Exact identities that must hold before any sampling is worth doing.
fn exact_checks(arr: &Arrangement, p: &Prepared) -> Result<Vec<CheckRow>, VerifyError> {
    let lat = &p.lattice;
    let chi = lat.characteristic_polynomial();
    let mut rows = Vec::new();

    let enumerated = enumerate_regions(arr).len();
    let counted = lat.region_count();
    rows.push(CheckRow::new(
        "region_count",
        counted == rational::int(enumerated as i64),
        format!("enumerated {enumerated}, (-1)^r chi(-1) = {}", rational::format(&counted)),
    ));
    rows.push(CheckRow::new("charpoly_alternates", chi.alternates(), format!("chi = {chi}")));

    let ps = zonotope::angle_sums_perles_shephard(lat)?;
    let dual = zonotope::angle_sums_dual(lat)?;
    rows.push(CheckRow::new("angle_sums_agree", ps == dual, format!("{} vs {}", fmt_list(&ps), fmt_list(&dual))));

    let (alpha0, mu) = zonotope::vertex_lemma_check(lat)?;
    rows.push(CheckRow::new(
        "vertex_angle_sum",
        alpha0 == mu,
        format!("alpha_0 = {}, |mu(0,1)| = {}", rational::format(&alpha0), rational::format(&mu)),
    ));

    let f = zonotope::f_vector(lat)?;
    rows.push(CheckRow::new(
        "vertices_are_regions",
        f[0] == p.regions.len() as i64,
        format!("f_0 = {}, regions = {}", f[0], p.regions.len()),
    ));

    // |μ| summed over flats of each dimension reproduces |χ| coefficientwise.
    let r = lat.rank();
    let mut sums = vec![Rational::zero(); r + 1];
    for x in 0..lat.len() {
        sums[lat.dim_of(x)] += rational::int(lat.mobius_from_bottom(x).abs());
    }
    let matches = (0..=r).all(|k| sums[k] == chi.coefficient(k as i64).abs());
    rows.push(CheckRow::new("flat_sums_match_charpoly", matches, format!("per-dimension |mu| sums {}", fmt_list(&sums))));
    Ok(rows)
}

fn fmt_list(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(rational::format).collect();
    format!("({})", parts.join(", "))
}

/// The closed region cone in essential coordinates, with the Euclidean
/// metric of the original space.
fn essential_cone(p: &Prepared, region: &Region) -> Result<Cone, ConeError> {
    let arr = &p.ess.arrangement;
    let inward = arr
        .normals()
        .into_iter()
        .zip(region.signs.signs())
        .map(|(n, s)| if *s == Sign::Minus { n.into_iter().map(|x| -x).collect() } else { n })
        .collect();
    Cone::with_dim(arr.dim(), inward, Some(p.ess.metric()), Some(region.witness.clone()))
}

fn mask_indices(mask: Mask, m: usize) -> Vec<usize> {
    (0..m).filter(|i| mask >> i & 1 == 1).collect()
}

fn tally(p: &Prepared, opts: &VerifyOptions, exact: bool) -> Result<Tallies, VerifyError> {
    let lat = &p.lattice;
    let r = p.ess.arrangement.dim();
    let m = p.ess.arrangement.len();
    let attribute = |faces: Vec<(Mask, f64)>| {
        let mut by_dim = vec![0.0; r + 1];
        let mut by_flat = BTreeMap::new();
        for (mask, share) in faces {
            let x = lat.closure(&mask_indices(mask, m));
            by_dim[lat.dim_of(x)] += share;
            *by_flat.entry(x).or_insert(0.0) += share;
        }
        RegionTally { by_dim, by_flat }
    };
    let regions = p
        .regions
        .par_iter()
        .enumerate()
        .map(|(i, region)| -> Result<RegionTally, VerifyError> {
            let cone = essential_cone(p, region)?;
            if exact {
                Ok(attribute(cone::exact_volumes_rank2(&cone)?.faces))
            } else {
                let n = opts.samples as f64;
                let hist = cone::mask_histogram(&cone, opts.samples, opts.seed, i as u64, opts.tol)?;
                Ok(attribute(hist.into_iter().map(|(mask, c)| (mask, c as f64 / n)).collect()))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Tallies { regions, exact })
}

fn use_exact(method: Method, rank: usize) -> Result<bool, VerifyError> {
    match method {
        Method::Auto => Ok(rank <= 2),
        Method::MonteCarlo => Ok(false),
        Method::Exact if rank <= 2 => Ok(true),
        Method::Exact => Err(VerifyError::ExactUnavailable(rank)),
    }
}

/// Sum of shares and its pooled binomial standard error.
fn pooled(shares: impl Iterator<Item = f64>, samples: u64, exact: bool) -> (f64, f64) {
    let mut sum = 0.0;
    let mut var = 0.0;
    for p in shares {
        sum += p;
        if !exact {
            var += p * (1.0 - p) / samples as f64;
        }
    }
    (sum, var.sqrt())
}

/// Checks `Σ_C ν_k(C) = |[t^{r−d+k}] χ(t)|` for `k = d, …, 0`.
pub fn verify_main_theorem(arr: &Arrangement, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    if !opts.tol.is_finite() || opts.tol < 0.0 {
        return Err(VerifyError::BadSpec(format!("tolerance {} must be a nonnegative number", opts.tol)));
    }
    let start = Instant::now();
    let p = prepare(arr)?;
    let chi = p.lattice.characteristic_polynomial();
    let checks = exact_checks(arr, &p)?;
    let checks_done = Instant::now();

    let r = arr.rank();
    let d = arr.dim();
    let shift = p.ess.index_shift();
    let exact = use_exact(opts.method, r)?;
    let mut report = VerificationReport {
        arrangement: "arrangement".to_string(),
        d,
        r,
        hyperplanes: arr.len(),
        regions: p.regions.len(),
        essentialized: !p.ess.was_essential(),
        index_shift: shift,
        charpoly: chi.highest_first().iter().map(rational::format).collect(),
        method: if exact { Method::Exact } else { Method::MonteCarlo }.label().to_string(),
        samples_per_region: if exact { 0 } else { opts.samples },
        seed: opts.seed,
        tol: opts.tol,
        zmax: opts.zmax,
        exact_tol: EXACT_PATH_TOL,
        checks,
        theorem: Vec::new(),
        flats: Vec::new(),
        failing_k: Vec::new(),
        failing_flats: Vec::new(),
        pass: false,
        timings: None,
    };
    if report.checks.iter().all(|c| c.pass) {
        if !exact && opts.samples == 0 {
            return Err(ConeError::NoSamples.into());
        }
        let t = tally(&p, opts, exact)?;
        report.theorem = theorem_rows(&t, &chi, d, shift, opts.samples);
        report.flats = flat_rows(&t, &p, shift, opts.samples);
    }
    report.reevaluate()?;
    if opts.timings {
        let end = Instant::now();
        report.timings =
            Some(Timings { exact_checks_ms: ms(checks_done - start), estimation_ms: ms(end - checks_done), total_ms: ms(end - start) });
    }
    Ok(report)
}

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn theorem_rows(t: &Tallies, chi: &crate::lattice::CharPoly, d: usize, shift: usize, samples: u64) -> Vec<KRow> {
    (0..=d)
        .rev()
        .map(|k| {
            let expected = chi.coefficient(k as i64 - shift as i64).abs();
            let (estimate, stderr) =
                if k < shift { (0.0, 0.0) } else { pooled(t.regions.iter().map(|c| c.by_dim[k - shift]), samples, t.exact) };
            KRow::new(k, &expected, estimate, stderr, t.exact)
        })
        .collect()
}

fn flat_rows(t: &Tallies, p: &Prepared, shift: usize, samples: u64) -> Vec<FlatRow> {
    let lat = &p.lattice;
    (0..lat.len())
        .map(|x| {
            let expected = rational::int(lat.mobius_from_bottom(x).abs());
            let (estimate, stderr) = pooled(t.regions.iter().map(|c| c.by_flat.get(&x).copied().unwrap_or(0.0)), samples, t.exact);
            FlatRow::new(
                lat.flat(x).map(|f| f.hyperplanes().to_vec()).unwrap_or_default(),
                lat.dim_of(x) + shift,
                &expected,
                estimate,
                stderr,
                t.exact,
            )
        })
        .collect()
}

/// The per-flat table alone: for every flat `x`, the volume of faces
/// spanning `x` summed over regions, against `|μ(x)|`.
pub fn verify_flat_identity(arr: &Arrangement, opts: &VerifyOptions) -> Result<Vec<FlatRow>, VerifyError> {
    let p = prepare(arr)?;
    let exact = use_exact(opts.method, arr.rank())?;
    let t = tally(&p, opts, exact)?;
    let mut rows = flat_rows(&t, &p, p.ess.index_shift(), opts.samples);
    for row in &mut rows {
        row.evaluate(opts.zmax, EXACT_PATH_TOL)?;
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tl() -> Arrangement {
        generate(&GeneratorSpec::ThreeLines).unwrap()
    }

    #[test]
    fn three_lines_exact_path() {
        let rep = verify_main_theorem(&tl(), &VerifyOptions::default()).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.method, "exact");
        assert_eq!(rep.charpoly, vec!["1", "-3", "2"]);
        let est: Vec<f64> = rep.theorem.iter().map(|k| k.estimate).collect();
        for (e, want) in est.iter().zip([1.0, 3.0, 2.0]) {
            assert!((e - want).abs() < 1e-9);
        }
    }

    #[test]
    fn braid_index_shift() {
        let braid = generate(&GeneratorSpec::Braid { n: 3 }).unwrap();
        let rep = verify_main_theorem(&braid, &VerifyOptions::default()).unwrap();
        assert!(rep.pass);
        assert!(rep.essentialized);
        assert_eq!(rep.index_shift, 1);
        let expected: Vec<&str> = rep.theorem.iter().map(|k| k.expected.as_str()).collect();
        assert_eq!(expected, ["1", "3", "2", "0"]);
    }

    #[test]
    fn exact_method_rejects_high_rank() {
        let b3 = generate(&GeneratorSpec::Boolean { d: 3 }).unwrap();
        let opts = VerifyOptions { method: Method::Exact, ..VerifyOptions::default() };
        assert!(matches!(verify_main_theorem(&b3, &opts), Err(VerifyError::ExactUnavailable(3))));
    }

    #[test]
    fn small_monte_carlo_run_passes() {
        let b3 = generate(&GeneratorSpec::Boolean { d: 3 }).unwrap();
        let opts = VerifyOptions { samples: 20_000, seed: 3, ..VerifyOptions::default() };
        let rep = verify_main_theorem(&b3, &opts).unwrap();
        assert!(rep.pass, "{:?}", rep.failing_k);
        assert_eq!(rep.theorem.len(), 4);
    }

    #[test]
    fn flat_identity_on_three_lines() {
        let rows = verify_flat_identity(&tl(), &VerifyOptions::default()).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.pass));
        assert_eq!(rows.last().unwrap().expected, "2");
    }
}
