//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails. Run with `cargo test -p arrlab --test acceptance`.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use arrlab::arrangement::{enumerate_faces, enumerate_regions};
use arrlab::cone::{project_point, project_point_exact};
use arrlab::rational::{self, frac, Rational};
use arrlab::verify::{generate, verify_flat_identity, verify_main_theorem, GeneratorSpec, Method, VerificationReport, VerifyOptions};
use arrlab::{zonotope, Arrangement, Cone, IntersectionLattice};
use common::{norm, SplitMix};

const MILLION: u64 = 1_000_000;
const ZMAX: f64 = 4.0;

type Failure = Box<dyn std::error::Error>;
type Outcome = Result<String, Failure>;
type Criterion = (&'static str, fn() -> Outcome);

fn gen(spec: &str) -> Arrangement {
    generate(&spec.parse().unwrap()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(msg().into())
    }
}

fn within_budget(elapsed: Duration, secs: u64) -> Result<(), Failure> {
    ensure(elapsed < Duration::from_secs(secs), || format!("took {:.1}s, budget {secs}s", elapsed.as_secs_f64()))
}

fn charpoly_ints(lat: &IntersectionLattice) -> Vec<i64> {
    lat.characteristic_polynomial().coefficients().iter().map(|c| rational::to_i64(c).unwrap()).collect()
}

/// Estimates by `k`, highest first, as they appear in the report.
fn estimates(rep: &VerificationReport) -> Vec<f64> {
    rep.theorem.iter().map(|row| row.estimate).collect()
}

fn max_abs_z(rep: &VerificationReport) -> f64 {
    rep.theorem.iter().map(|row| row.z.map_or(f64::INFINITY, f64::abs)).fold(0.0, f64::max)
}

fn mc(samples: u64, seed: u64) -> VerifyOptions {
    VerifyOptions { samples, seed, zmax: ZMAX, method: Method::MonteCarlo, ..VerifyOptions::default() }
}

fn exact() -> VerifyOptions {
    VerifyOptions { method: Method::Exact, ..VerifyOptions::default() }
}

fn close(got: &[f64], want: &[f64], tol: f64) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(a, b)| (a - b).abs() <= tol)
}

fn three_lines() -> Outcome {
    let start = Instant::now();
    let tl = gen("threelines");
    let lat = IntersectionLattice::build(&tl);
    ensure(charpoly_ints(&lat) == [2, -3, 1], || format!("chi = {}", lat.characteristic_polynomial()))?;
    ensure(common::whitney_charpoly(&tl.normals()) == [2, -3, 1], || "subset expansion disagrees".into())?;
    let regions = enumerate_regions(&tl).len();
    ensure(regions == 6, || format!("{regions} regions"))?;

    let ex = verify_main_theorem(&tl, &exact())?;
    ensure(ex.pass && close(&estimates(&ex), &[1.0, 3.0, 2.0], 1e-9), || format!("exact path {:?}", estimates(&ex)))?;

    let rep = verify_main_theorem(&tl, &mc(MILLION, 1))?;
    ensure(rep.pass, || rep.to_text())?;
    within_budget(start.elapsed(), 10)?;
    Ok(format!("chi = t^2 - 3t + 2, exact {:?}, max |z| {:.2}", estimates(&ex), max_abs_z(&rep)))
}

fn boolean_three() -> Outcome {
    let start = Instant::now();
    let b3 = gen("boolean:3");
    // Each of the 8 octants projects onto its k-faces with probability C(3,k)/8.
    let binom = [1.0, 3.0, 3.0, 1.0];
    let oracle: Vec<f64> = (0..=3).rev().map(|k| 8.0 * binom[k] / 8.0).collect();
    let rep = verify_main_theorem(&b3, &mc(MILLION, 2))?;
    let expected: Vec<f64> = rep.theorem.iter().map(|row| row.expected.parse().unwrap()).collect();
    ensure(expected == oracle, || format!("expected side {expected:?}, oracle {oracle:?}"))?;
    for row in &rep.theorem {
        let z = (row.estimate - oracle[3 - row.k]) / row.stderr;
        ensure(z.abs() <= ZMAX, || format!("k = {}: z = {z:.2} against the octant oracle", row.k))?;
    }
    ensure(rep.pass, || rep.to_text())?;
    within_budget(start.elapsed(), 30)?;
    Ok(format!("(1, 3, 3, 1), max |z| {:.2}", max_abs_z(&rep)))
}

fn braid_three() -> Outcome {
    let a3 = gen("braid:3");
    ensure((a3.dim(), a3.rank()) == (3, 2), || format!("d = {}, r = {}", a3.dim(), a3.rank()))?;
    let lat = IntersectionLattice::build(&a3);
    ensure(charpoly_ints(&lat) == [2, -3, 1], || format!("chi = {}", lat.characteristic_polynomial()))?;
    // Six 60-degree wedges times a line: per wedge (1/6, 1/2, 1/3) on faces of
    // essential dimension 2, 1, 0, each lifted by one dimension.
    let oracle = [6.0 * (1.0 / 6.0), 6.0 * 0.5, 6.0 * (1.0 / 3.0), 0.0];
    let rep = verify_main_theorem(&a3, &exact())?;
    ensure(rep.pass && close(&estimates(&rep), &oracle, 1e-9), || format!("{:?}", estimates(&rep)))?;
    ensure(rep.index_shift == 1, || format!("index shift {}", rep.index_shift))?;
    Ok(format!("{:?} with index shift 1", estimates(&rep)))
}

fn random_specs(count: u64, mut pick: impl FnMut(&mut SplitMix) -> (usize, usize)) -> Vec<String> {
    let mut rng = SplitMix(2024);
    (0..count)
        .map(|seed| {
            let (m, d) = pick(&mut rng);
            format!("random:m={m},d={d},seed={seed},range=4")
        })
        .collect()
}

fn region_identity() -> Outcome {
    let start = Instant::now();
    let mut specs: Vec<String> = ["threelines", "boolean:2", "boolean:3", "braid:3"].map(String::from).to_vec();
    // The line has a single central hyperplane.
    specs.extend(random_specs(20, |rng| {
        let d = rng.range(1, 4) as usize;
        (if d == 1 { 1 } else { rng.range(1, 7) as usize }, d)
    }));
    for spec in &specs {
        let arr = gen(spec);
        let counted = IntersectionLattice::build(&arr).region_count();
        let enumerated = enumerate_regions(&arr).len();
        let brute = common::brute_force_cells(&arr.normals(), false).len();
        ensure(counted == rational::int(enumerated as i64) && enumerated == brute, || {
            format!("{spec}: (-1)^r chi(-1) = {}, enumerated {enumerated}, brute force {brute}", rational::format(&counted))
        })?;
    }
    within_budget(start.elapsed(), 60)?;
    Ok(format!("{} arrangements", specs.len()))
}

fn corpus() -> Vec<String> {
    let mut specs: Vec<String> = ["threelines", "boolean:2", "boolean:3", "boolean:4", "braid:3", "braid:4"].map(String::from).to_vec();
    specs.extend(random_specs(10, |rng| (rng.range(3, 7) as usize, rng.range(2, 4) as usize)));
    specs
}

fn essential_lattice(spec: &str) -> IntersectionLattice {
    IntersectionLattice::build(&gen(spec).essentialize().arrangement)
}

fn angle_sums() -> Outcome {
    for spec in corpus() {
        let lat = essential_lattice(&spec);
        let ps = zonotope::angle_sums_perles_shephard(&lat)?;
        let dual = zonotope::angle_sums_dual(&lat)?;
        ensure(ps == dual, || format!("{spec}: {ps:?} vs {dual:?}"))?;
        let (alpha0, mu) = zonotope::vertex_lemma_check(&lat)?;
        ensure(alpha0 == mu, || format!("{spec}: alpha_0 {alpha0} vs |mu| {mu}"))?;
    }
    let ints = |v: &[i64]| v.iter().map(|&x| rational::int(x)).collect::<Vec<Rational>>();
    let tl = zonotope::angle_sums_dual(&essential_lattice("threelines"))?;
    ensure(tl == ints(&[2, 3, 1]), || format!("three lines alpha {tl:?}"))?;
    let b3 = zonotope::angle_sums_dual(&essential_lattice("boolean:3"))?;
    ensure(b3 == ints(&[1, 3, 3, 1]), || format!("boolean alpha {b3:?}"))?;
    Ok(format!("{} arrangements, three lines (2, 3, 1), boolean (1, 3, 3, 1)", corpus().len()))
}

fn f_vectors() -> Outcome {
    for (spec, want) in [("threelines", vec![6, 6, 1]), ("boolean:3", vec![8, 12, 6, 1])] {
        let arr = gen(spec);
        let f = zonotope::f_vector(&IntersectionLattice::build(&arr))?;
        let r = arr.rank();
        let mut counts = vec![0i64; r + 1];
        for face in enumerate_faces(&arr) {
            counts[r - face.dim] += 1;
        }
        ensure(f == want && counts == want, || format!("{spec}: formula {f:?}, faces {counts:?}, want {want:?}"))?;
    }
    Ok("three lines (6, 6, 1), boolean (8, 12, 6, 1)".into())
}

fn projections() -> Outcome {
    let start = Instant::now();
    let mut rng = SplitMix(7);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < 1000 {
        let d = rng.range(1, 4) as usize;
        let m = rng.range(1, 6) as usize;
        let rows: Vec<Vec<i64>> = (0..m).map(|_| rng.int_vec(d, 3)).collect();
        let Ok(cone) = Cone::from_integers(&rows, d) else { continue };
        let p: Vec<i64> = (0..d).map(|_| rng.range(-12, 12)).collect();
        let zq: Vec<Rational> = p.iter().map(|&x| frac(x, 4)).collect();
        let z: Vec<f64> = p.iter().map(|&x| x as f64 / 4.0).collect();
        let want = project_point_exact(&cone, &zq)?;
        let got = project_point(&cone, &z)?;
        for (a, b) in got.point.iter().zip(&want.point) {
            let err = (a - rational::to_f64(b)).abs();
            worst = worst.max(err);
            ensure(err <= 1e-9, || format!("rows {rows:?}, z {z:?}: {:?} vs exact", got.point))?;
        }
        let bound = 1e-9 * (1.0 + norm(&z).powi(2));
        let split: Vec<f64> = got.point.iter().zip(&got.residual).zip(&z).map(|((y, s), z)| y + s - z).collect();
        let inner: f64 = got.point.iter().zip(&got.residual).map(|(y, s)| y * s).sum();
        ensure(norm(&split) <= bound && inner.abs() <= bound, || format!("rows {rows:?}, z {z:?}: Moreau residual"))?;
        done += 1;
    }
    within_budget(start.elapsed(), 60)?;
    Ok(format!("1000 pairs, largest deviation {worst:.1e}"))
}

fn flat_identity() -> Outcome {
    let tl = gen("threelines");
    let rows = verify_flat_identity(&tl, &mc(MILLION, 3))?;
    for row in &rows {
        let want = match row.hyperplanes.len() {
            0 => "1",
            1 => "1",
            _ => "2",
        };
        ensure(row.expected == want, || format!("flat {:?}: expected {}", row.hyperplanes, row.expected))?;
        let z = row.z.map_or(f64::INFINITY, f64::abs);
        ensure(row.pass && z <= ZMAX, || format!("flat {:?}: estimate {} (z {z:.2})", row.hyperplanes, row.estimate))?;
    }
    ensure(rows.len() == 5, || format!("{} flats", rows.len()))?;
    let worst = rows.iter().filter_map(|r| r.z).map(f64::abs).fold(0.0, f64::max);
    Ok(format!("origin 2, lines 1, plane 1, max |z| {worst:.2}"))
}

fn random_sweep() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for seed in 0..10 {
        let arr = generate(&GeneratorSpec::Random { m: 5, d: 3, seed, range: 5 })?;
        ensure(arr.is_essential(), || format!("seed {seed} is not essential"))?;
        let rep = verify_main_theorem(&arr, &mc(MILLION, 100 + seed))?;
        ensure(rep.pass, || format!("seed {seed}\n{}", rep.to_text()))?;
        worst = worst.max(max_abs_z(&rep));
    }
    within_budget(start.elapsed(), 600)?;
    Ok(format!("10 arrangements, max |z| {worst:.2}"))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("arrlab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let mut reports = Vec::new();
    for threads in ["1", "4"] {
        let out = dir.join(format!("report-{threads}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_arrlab"))
            .args(["verify", "gen:random:m=5,d=3,seed=4", "--samples", "200000", "--seed", "9", "--out"])
            .arg(&out)
            .env("ARRLAB_THREADS", threads)
            .output()?;
        ensure(status.status.success(), || String::from_utf8_lossy(&status.stdout).into_owned())?;
        reports.push(std::fs::read(&out)?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    ensure(reports[0] == reports[1], || "reports differ between 1 and 4 threads".into())?;
    Ok(format!("{} identical bytes", reports[0].len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("three lines", three_lines),
        ("boolean B3", boolean_three),
        ("braid A3 index shift", braid_three),
        ("region count identity", region_identity),
        ("angle sums", angle_sums),
        ("f-vectors", f_vectors),
        ("projection", projections),
        ("per-flat sums", flat_identity),
        ("random sweep", random_sweep),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.1}s) {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({secs:.1}s) {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
