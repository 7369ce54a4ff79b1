//! `maxspace` command line.
//!
//! Exit codes: 0 success, 2 input or configuration error, 3 geometric or
//! numerical failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use super::io::{parse_points, to_json, write_points};
use super::study::{run_limit_study, run_power_study, StudyConfig, StudyKind};
use crate::convexity::{test_nonparametric, test_semi_parametric, Method, TestResult};
use crate::density::{BandwidthSpec, KernelSpec};
use crate::error::Error;
use crate::geom2d::Point2;
use crate::sampling::{NoiseSpec, SeededRng, ShapeSpec};
use crate::spacing::{semi_parametric_statistic, DEFAULT_LEVEL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GEOMETRY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "maxspace", version, about = "Maximal-spacing statistics and convexity tests")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Largest empty disk in the hull of a sample and its spacing statistics.
    Stat(InputArgs),
    /// Run a convexity test on a sample.
    Test {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        test: TestArgs,
    },
    /// Write a generated sample as CSV.
    Simulate {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Monte Carlo rejection proportions.
    Power {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Sample sizes, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "200")]
        n: Vec<usize>,
        #[command(flatten)]
        test: TestArgs,
        #[arg(long, default_value_t = 100)]
        reps: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Distribution of the normalised spacing on a known support.
    Limit {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_delimiter = ',', default_value = "2000")]
        n: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_LEVEL)]
        gamma: f64,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSV of x,y rows; `-` reads standard input.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    /// `semi`, `np`, or both comma separated (power only).
    #[arg(long, value_enum, value_delimiter = ',', default_value = "semi")]
    pub method: Vec<MethodArg>,
    #[arg(long, default_value_t = DEFAULT_LEVEL)]
    pub gamma: f64,
    #[arg(long, value_enum, default_value_t = KernelArg::Gaussian)]
    pub kernel: KernelArg,
    /// Bandwidth multiplier: h = h0 * sigma * n^(-1/6).
    #[arg(long, default_value_t = 1.0)]
    pub h0: f64,
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    #[arg(long, value_enum, default_value_t = ShapeArg::Disk)]
    pub shape: ShapeArg,
    /// S-shape radius (`inf` for the straight band) or disk radius.
    #[arg(long = "R", value_parser = parse_radius)]
    pub radius: Option<f64>,
    /// Notch apex angle, e.g. `pi/4` or `0.785`.
    #[arg(long, value_parser = parse_angle, default_value = "pi/4")]
    pub phi: f64,
    #[arg(long, value_enum, default_value_t = NoiseArg::Uniform)]
    pub noise: NoiseArg,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, env = "MAXSPACE_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, value_enum, default_value_t = OutArg::Json)]
    pub out: OutArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Semi,
    Np,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Semi => Method::SemiParametric,
            MethodArg::Np => Method::Nonparametric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Gaussian,
    Uniform,
}

impl From<KernelArg> for KernelSpec {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::Gaussian => KernelSpec::Gaussian,
            KernelArg::Uniform => KernelSpec::Uniform,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    /// Unit square minus a triangular notch.
    #[value(name = "square-triangle")]
    SquareTriangle,
    #[value(name = "s-shape")]
    SShape,
    Disk,
    Square,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NoiseArg {
    Uniform,
    Tnormal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutArg {
    Json,
    Csv,
}

fn parse_radius(s: &str) -> Result<f64, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "+inf" => Ok(f64::INFINITY),
        t => t.parse().map_err(|_| format!("invalid radius {s:?}")),
    }
}

/// Accepts plain numbers and `[a][*]pi[/k]`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    let bad = || format!("invalid angle {s:?}");
    let Some(pos) = t.find("pi") else {
        return t.parse().map_err(|_| bad());
    };
    let coef = t[..pos].trim_end_matches('*').trim();
    let coef: f64 = if coef.is_empty() { 1.0 } else { coef.parse().map_err(|_| bad())? };
    let rest = t[pos + 2..].trim();
    let div: f64 = match rest.strip_prefix('/') {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None if rest.is_empty() => 1.0,
        None => return Err(bad()),
    };
    Ok(coef * std::f64::consts::PI / div)
}

impl ShapeArgs {
    pub fn spec(&self) -> ShapeSpec {
        match self.shape {
            ShapeArg::SquareTriangle => ShapeSpec::SquareMinusTriangle { phi: self.phi },
            ShapeArg::SShape => ShapeSpec::SShape {
                radius: self.radius.unwrap_or(1.5),
                noise: match self.noise {
                    NoiseArg::Uniform => NoiseSpec::uniform(),
                    NoiseArg::Tnormal => NoiseSpec::truncated_normal(),
                },
            },
            ShapeArg::Disk => ShapeSpec::Disk {
                radius: self.radius.unwrap_or(1.0),
            },
            ShapeArg::Square => ShapeSpec::Rectangle {
                width: 1.0,
                height: 1.0,
            },
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Lib(e) if e.is_geometric() => EXIT_GEOMETRY,
            Failure::Lib(_) => EXIT_INPUT,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) => f.write_str(m),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

fn read_points(input: &InputArgs) -> Result<Vec<Point2>, Failure> {
    let text = if input.input.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&input.input)
    }
    .map_err(|e| Failure::Input(format!("{}: {e}", input.input.display())))?;
    let pts = parse_points(&text).map_err(|e| Failure::Input(format!("{}: {e}", input.input.display())))?;
    if pts.len() < 3 {
        return Err(Failure::Input(format!("need at least 3 points, got {}", pts.len())));
    }
    Ok(pts)
}

#[derive(Serialize)]
struct Witness {
    cx: f64,
    cy: f64,
    r: f64,
}

#[derive(Serialize)]
struct StatOutput {
    n: usize,
    #[serde(rename = "R")]
    r: f64,
    delta: f64,
    #[serde(rename = "V")]
    v: f64,
    #[serde(rename = "U")]
    u: f64,
    hull_area: f64,
    witness: Witness,
    duplicates_removed: usize,
}

/// The stable `test` output record.
#[derive(Serialize)]
pub struct TestOutput {
    pub method: &'static str,
    pub n: usize,
    pub statistic: f64,
    pub critical_value: f64,
    pub u: f64,
    pub p_value: f64,
    pub reject: bool,
    pub hull_area: f64,
    #[serde(rename = "R")]
    pub r: f64,
    witness: Witness,
    pub seed: Option<u64>,
}

impl TestOutput {
    pub fn new(res: &TestResult, seed: Option<u64>) -> Self {
        Self {
            method: res.method.as_str(),
            n: res.diagnostics.n,
            statistic: res.statistic,
            critical_value: res.critical,
            u: res.u_value,
            p_value: res.p_value,
            reject: res.reject,
            hull_area: res.diagnostics.hull_area,
            r: res.diagnostics.r,
            witness: Witness {
                cx: res.witness.center.x,
                cy: res.witness.center.y,
                r: res.witness.radius,
            },
            seed,
        }
    }
}

fn run_test(points: &[Point2], args: &TestArgs) -> Result<TestResult, Failure> {
    let method = match args.method.as_slice() {
        [m] => Method::from(*m),
        _ => return Err(Failure::Input("test takes exactly one --method".into())),
    };
    Ok(match method {
        Method::SemiParametric => test_semi_parametric(points, args.gamma)?,
        Method::Nonparametric => test_nonparametric(
            points,
            args.gamma,
            args.kernel.into(),
            BandwidthSpec::Scaled(args.h0),
        )?,
    })
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let io_fail = |e: std::io::Error| Failure::Input(format!("write failed: {e}"));
    match cli.command {
        Command::Stat(input) => {
            let pts = read_points(&input)?;
            let st = semi_parametric_statistic(&pts)?;
            let rec = StatOutput {
                n: st.params.n,
                r: st.r,
                delta: st.delta,
                v: st.v,
                u: st.u,
                hull_area: st.region_area,
                witness: Witness {
                    cx: st.witness.center.x,
                    cy: st.witness.center.y,
                    r: st.witness.radius,
                },
                duplicates_removed: st.duplicates_removed,
            };
            writeln!(out, "{}", to_json(&rec)).map_err(io_fail)?;
            writeln!(
                err,
                "n={} R={:.6} V={:.6} U={:.4} hull area {:.6}",
                rec.n, rec.r, rec.v, rec.u, rec.hull_area
            )
            .map_err(io_fail)?;
        }
        Command::Test { input, test } => {
            let pts = read_points(&input)?;
            let res = run_test(&pts, &test)?;
            writeln!(out, "{}", to_json(&TestOutput::new(&res, None))).map_err(io_fail)?;
            writeln!(
                err,
                "{} test, n={}: statistic {:.6} vs critical {:.6}, p = {:.4}: {}",
                res.method.as_str(),
                res.diagnostics.n,
                res.statistic,
                res.critical,
                res.p_value,
                if res.reject { "convexity rejected" } else { "not rejected" }
            )
            .map_err(io_fail)?;
        }
        Command::Simulate { shape, n, run } => {
            let spec = shape.spec();
            let mut rng = SeededRng::new(run.seed, 0);
            let sample = spec.generate(n, &mut rng)?;
            match run.out {
                OutArg::Csv => write!(out, "{}", write_points(sample.points())),
                OutArg::Json => writeln!(out, "{}", to_json(sample.points())),
            }
            .map_err(io_fail)?;
            writeln!(err, "{} points from {}", n, spec.label()).map_err(io_fail)?;
        }
        Command::Power {
            shape,
            n,
            test,
            reps,
            run,
        } => {
            let cfg = StudyConfig {
                kind: StudyKind::Power,
                shapes: vec![shape.spec()],
                sizes: n,
                reps,
                gamma_level: test.gamma,
                methods: test.method.iter().map(|&m| m.into()).collect(),
                kernel: test.kernel.into(),
                bandwidth: BandwidthSpec::Scaled(test.h0),
                seed: run.seed,
                workers: run.workers,
            };
            let table = run_power_study(&cfg)?;
            match run.out {
                OutArg::Csv => write!(out, "{}", table.to_csv()),
                OutArg::Json => writeln!(out, "{}", to_json(&table)),
            }
            .map_err(io_fail)?;
            for r in &table.rows {
                writeln!(
                    err,
                    "{} n={} {}: {}/{} rejected ({:.3} +/- {:.3})",
                    r.shape,
                    r.n,
                    r.method.as_str(),
                    r.rejections,
                    r.reps - r.failures,
                    r.proportion,
                    r.std_error
                )
                .map_err(io_fail)?;
            }
        }
        Command::Limit {
            shape,
            n,
            gamma,
            reps,
            run,
        } => {
            let mut cfg = StudyConfig::limit(shape.spec(), 3, reps, run.seed);
            cfg.sizes = n;
            cfg.gamma_level = gamma;
            cfg.workers = run.workers;
            let reports = run_limit_study(&cfg)?;
            match run.out {
                OutArg::Csv => {
                    for r in &reports {
                        write!(out, "{}", r.to_csv()).map_err(io_fail)?;
                    }
                    Ok(())
                }
                OutArg::Json => writeln!(out, "{}", to_json(&reports)),
            }
            .map_err(io_fail)?;
            for r in &reports {
                writeln!(
                    err,
                    "{} n={}: KS {:.4}, band median {:.3}",
                    r.shape, r.n, r.ks_distance, r.band_median
                )
                .map_err(io_fail)?;
            }
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("pi/4").unwrap(), PI / 4.0);
        assert_eq!(parse_angle("PI").unwrap(), PI);
        assert_eq!(parse_angle("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("2*pi/8").unwrap(), PI / 4.0);
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert!(parse_angle("pi/x").is_err());
        assert!(parse_angle("pix").is_err());
    }

    #[test]
    fn radius_accepts_infinity() {
        assert_eq!(parse_radius("inf").unwrap(), f64::INFINITY);
        assert_eq!(parse_radius("1.5").unwrap(), 1.5);
    }

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("maxspace").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bad_level_is_input_error() {
        let (code, _, _) = run_args(&["power", "--gamma", "1", "--reps", "1"]);
        assert_eq!(code, EXIT_INPUT);
        let (code, _, _) = run_args(&["frobnicate"]);
        assert_eq!(code, EXIT_INPUT);
    }

    #[test]
    fn simulate_is_seeded() {
        let a = run_args(&["simulate", "--n", "5", "--seed", "3", "--out", "csv"]);
        let b = run_args(&["simulate", "--n", "5", "--seed", "3", "--out", "csv"]);
        assert_eq!(a.0, EXIT_OK);
        assert_eq!(a.1, b.1);
        assert_eq!(parse_points(&a.1).unwrap().len(), 5);
    }
}
