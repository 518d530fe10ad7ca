use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use arrlab::arrangement::{region_cone, ArrangementFile};
use arrlab::cone::{self, project_point_exact, project_point_with_tol, ConeFile, DEFAULT_TOL};
use arrlab::rational;
use arrlab::verify::{self, analyze, emit_report, generate, GeneratorSpec, Method, ReportFormat, VerifyOptions};
use arrlab::{Arrangement, SignVector};

#[derive(Parser)]
#[command(name = "arrlab", version, about = "Hyperplane arrangements, intersection lattices and cone projection volumes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Mc,
    Exact,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice, Möbius values, characteristic polynomial and regions.
    Analyze {
        /// Arrangement JSON file or `gen:SPEC`.
        input: String,
        /// Add zonotope face numbers and angle sums.
        #[arg(long)]
        zonotope: bool,
        /// List every face.
        #[arg(long)]
        faces: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare summed projection volumes against the characteristic polynomial.
    Verify {
        /// Arrangement JSON file or `gen:SPEC`.
        input: String,
        /// Samples per region.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 4.0)]
        zmax: f64,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Write the JSON report here; a text summary goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Format for stdout when `--out` is absent.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Write a generated arrangement as JSON.
    ///
    /// Families: `boolean D`, `braid N`, `threelines`,
    /// `random m=M d=D seed=S [range=R]`. A single `family:params` string
    /// also works.
    Gen {
        family: String,
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Project a point onto a cone.
    Project {
        /// Cone JSON file `{"dim": d, "inequalities": [[..], ..]}`.
        #[arg(long)]
        cone: PathBuf,
        /// Comma-separated coordinates (integers, decimals or p/q).
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Also run the exact rational projection.
        #[arg(long)]
        exact: bool,
    },
    /// Monte Carlo projection volumes of one cone.
    Estimate {
        #[arg(long, conflicts_with_all = ["arrangement", "region"])]
        cone: Option<PathBuf>,
        /// Arrangement JSON file or `gen:SPEC`; needs `--region`.
        #[arg(long, requires = "region")]
        arrangement: Option<String>,
        /// Region sign vector such as `+-+`.
        #[arg(long, allow_hyphen_values = true)]
        region: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    if let Ok(n) = std::env::var("ARRLAB_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("arrlab: ignoring ARRLAB_THREADS={n:?}"),
        }
    }
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("arrlab: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { input, zonotope, faces, format } => {
            let (arr, _) = load(&input)?;
            let a = analyze(&arr, zonotope, faces)?;
            print(&match format {
                Format::Json => a.to_json(),
                Format::Text => a.to_text(),
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, samples, seed, tol, zmax, method, out, format, timings } => {
            let (arr, id) = load(&input)?;
            let method = match method {
                MethodArg::Auto => Method::Auto,
                MethodArg::Mc => Method::MonteCarlo,
                MethodArg::Exact => Method::Exact,
            };
            let opts = VerifyOptions { samples, seed, tol, zmax, method, timings };
            let mut report = verify::verify_main_theorem(&arr, &opts)?;
            report.arrangement = id;
            let stdout = &mut io::stdout().lock();
            match out {
                Some(path) => {
                    let mut f = fs::File::create(&path)?;
                    emit_report(&report, ReportFormat::Json, &mut f)?;
                    emit_report(&report, ReportFormat::Text, stdout)?;
                }
                None => {
                    let format = match format {
                        Format::Json => ReportFormat::Json,
                        Format::Text => ReportFormat::Text,
                    };
                    emit_report(&report, format, stdout)?;
                }
            }
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Gen { family, params, out } => {
            let spec = gen_spec(&family, &params)?;
            let arr = generate(&spec)?;
            let text = ArrangementFile::from_arrangement(&arr, Some(spec.to_string())).to_json() + "\n";
            match out {
                Some(path) => fs::write(path, text)?,
                None => print(&text)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Project { cone, point, tol, exact } => {
            let c = ConeFile::read(&cone)?.to_cone()?;
            let coords: Vec<&str> = point.split(',').map(str::trim).collect();
            let z: Vec<f64> = coords.iter().map(|s| parse_f64(s)).collect::<Result<_>>()?;
            let r = project_point_with_tol(&c, &z, tol)?;
            let mut value = json!({
                "point": r.point,
                "residual": r.residual,
                "tight_set": r.tight_set,
                "face_dim": r.face_dim,
            });
            if exact {
                let zq = coords.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                let e = project_point_exact(&c, &zq)?;
                let fmt = |v: &[rational::Rational]| v.iter().map(rational::format).collect::<Vec<_>>();
                value["exact"] = json!({
                    "point": fmt(&e.point),
                    "residual": fmt(&e.residual),
                    "tight_set": e.tight_set,
                    "face_dim": e.face_dim,
                });
            }
            print(&format!("{}\n", serde_json::to_string_pretty(&value)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Estimate { cone, arrangement, region, samples, seed, stream, tol } => {
            let c = match (cone, arrangement, region) {
                (Some(path), _, _) => ConeFile::read(&path)?.to_cone()?,
                (None, Some(input), Some(region)) => {
                    let (arr, _) = load(&input)?;
                    region_cone(&arr, &region.parse::<SignVector>()?)?
                }
                _ => return Err("pass --cone, or --arrangement with --region".into()),
            };
            let est = cone::estimate_volumes_mc_with(&c, samples, seed, stream, tol)?;
            print(&format!("{}\n", serde_json::to_string_pretty(&est)?))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Reads an arrangement from a file or a `gen:SPEC` string; also returns
/// an identifier for reports.
fn load(input: &str) -> Result<(Arrangement, String)> {
    if let Some(spec) = input.strip_prefix("gen:") {
        let spec: GeneratorSpec = spec.parse()?;
        return Ok((generate(&spec)?, spec.to_string()));
    }
    let path = Path::new(input);
    let file = ArrangementFile::read(path)?;
    let id = file.name.clone().unwrap_or_else(|| path.file_stem().map_or_else(|| input.to_string(), |s| s.to_string_lossy().into_owned()));
    Ok((file.to_arrangement()?, id))
}

fn gen_spec(family: &str, params: &[String]) -> Result<GeneratorSpec> {
    let text = if params.is_empty() { family.to_string() } else { format!("{family}:{}", params.join(",")) };
    Ok(text.parse()?)
}

fn parse_f64(s: &str) -> Result<f64> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) => Err(format!("coordinate {s:?} is not finite").into()),
        Err(_) => Ok(rational::to_f64(&parse_rational(s)?)),
    }
}

/// Integers, `p/q`, or finite decimals (converted exactly).
fn parse_rational(s: &str) -> Result<rational::Rational> {
    if let Ok(q) = rational::parse(s) {
        return Ok(q);
    }
    let (neg, body) = s.strip_prefix('-').map_or((false, s), |b| (true, b));
    let (int, frac) = body.split_once('.').ok_or_else(|| format!("bad coordinate {s:?}"))?;
    let digits = format!("{int}{frac}");
    let q = rational::parse(&format!("{digits}/1{}", "0".repeat(frac.len()))).map_err(|_| format!("bad coordinate {s:?}"))?;
    Ok(if neg { -q } else { q })
}

fn print(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}
