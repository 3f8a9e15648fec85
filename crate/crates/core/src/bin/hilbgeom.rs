use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hilbgeom::harmonic::circle_directions;
use hilbgeom::io::{body_to_json, format_significant, parse_body, parse_point_arg, parse_points};
use hilbgeom::svg::{Overlay, OverlayShape, Scene};
use hilbgeom::tolerance::{set_geo_eps, TOL_ENV_VAR};
use hilbgeom::verify::{self, Suite, VerifyConfig};
use hilbgeom::{
    distance, distance_matrix, metric_ball_boundary, symmetrize_polytope_body, BallKind,
    ConvexBody, GeomError, MetricKind, Point,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_NOT_INTERIOR: u8 = 2;
const EXIT_BAD_BODY: u8 = 3;
const EXIT_NOT_POLYTOPE: u8 = 4;

/// Funk and Hilbert geometry of convex bodies.
#[derive(Parser)]
#[command(name = "hilbgeom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two interior points.
    Dist {
        body: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value = "hilbert", value_parser = parse_metric)]
        kind: MetricKind,
    },
    /// Distance matrix of a list of points.
    Matrix {
        body: PathBuf,
        points: PathBuf,
        #[arg(long, default_value = "hilbert", value_parser = parse_metric)]
        kind: MetricKind,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Json)]
        out: MatrixFormat,
        /// Write to this file instead of standard output.
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Exact harmonic symmetrization of a polytope about an interior point.
    Symmetrize {
        body: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Drop redundant facets.
        #[arg(long)]
        prune: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Boundary of a Funk or Hilbert ball, as JSON and optionally SVG.
    Ball {
        body: PathBuf,
        #[arg(allow_hyphen_values = true)]
        center: String,
        radius: f64,
        #[arg(long, value_enum, default_value_t = BallArg::Hilbert)]
        kind: BallArg,
        #[arg(long, default_value_t = 128)]
        samples: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the JSON point list here instead of standard output.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run randomized property suites.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Replace every property tolerance.
        #[arg(long)]
        check_tol: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum BallArg {
    Funk,
    Hilbert,
}

fn parse_metric(s: &str) -> Result<MetricKind, GeomError> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, GeomError> {
    s.parse()
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        let code = match e {
            GeomError::NotInterior
            | GeomError::NotInteriorAt { .. }
            | GeomError::OutsideClosure
            | GeomError::PathNotInterior { .. } => EXIT_NOT_INTERIOR,
            GeomError::InvalidBody(_) | GeomError::EmptyInterior => EXIT_BAD_BODY,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome<T = ()> = Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text)
        .map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", path.display())))
}

fn load_body(path: &Path) -> Outcome<ConvexBody> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_BAD_BODY, format!("{}: {e}", path.display())))?;
    parse_body(&text).map_err(|e| Failure::new(EXIT_BAD_BODY, e.to_string()))
}

fn emit(text: &str, path: Option<&Path>) -> Outcome {
    match path {
        Some(p) => write(p, text),
        None => {
            let mut text = text.to_string();
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match std::io::stdout().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(Failure::new(EXIT_FAILURE, e.to_string()))
                }
                _ => Ok(()),
            }
        }
    }
}

#[derive(Serialize)]
struct BallReport<'a> {
    kind: BallKind,
    center: &'a Point,
    radius: f64,
    /// `null` where the sphere does not meet the ray.
    points: Vec<Option<Point>>,
}

fn run(command: Command) -> Outcome<u8> {
    match command {
        Command::Dist { body, x, y, kind } => {
            let body = load_body(&body)?;
            let (x, y) = (parse_point_arg(&x)?, parse_point_arg(&y)?);
            let d = distance(&body, kind, &x, &y)?;
            emit(&format_significant(d.value()), None)?;
        }
        Command::Matrix {
            body,
            points,
            kind,
            out,
            output,
        } => {
            let body = load_body(&body)?;
            let points = parse_points(&read(&points)?)?;
            let m = distance_matrix(&body, &points, kind)?;
            let text = match out {
                MatrixFormat::Csv => m.to_csv(),
                MatrixFormat::Json => m.to_json(),
            };
            emit(&text, output.as_deref())?;
        }
        Command::Symmetrize {
            body,
            x,
            prune,
            out,
        } => {
            let body = load_body(&body)?;
            let x = parse_point_arg(&x)?;
            let mut sym = symmetrize_polytope_body(&body, &x).map_err(|e| match e {
                GeomError::Unsupported(_) => Failure::new(
                    EXIT_NOT_POLYTOPE,
                    "symmetrize needs an hpolytope or vpolytope body",
                ),
                other => other.into(),
            })?;
            if prune {
                let pruned = sym.as_polytope().expect("polytope").prune_redundant()?;
                sym = ConvexBody::polytope(pruned).with_openness(sym.openness());
            }
            emit(&body_to_json(&sym), out.as_deref())?;
        }
        Command::Ball {
            body,
            center,
            radius,
            kind,
            samples,
            svg,
            json,
        } => {
            let body = load_body(&body)?;
            let center = parse_point_arg(&center)?;
            if body.dim() != 2 {
                return Err(Failure::new(
                    EXIT_FAILURE,
                    "ball sampling needs a planar body",
                ));
            }
            let kind = match kind {
                BallArg::Funk => BallKind::Funk,
                BallArg::Hilbert => BallKind::Hilbert,
            };
            let boundary = metric_ball_boundary(
                &body,
                &center,
                radius,
                kind,
                &circle_directions(samples.max(3)),
            )?;
            let points: Vec<Option<Point>> = boundary.into_iter().map(Result::ok).collect();
            if let Some(path) = svg {
                let mut scene = Scene::new(body.clone())?;
                scene.add(Overlay::new(
                    "center",
                    OverlayShape::Points(vec![center.clone()]),
                    "#000000",
                ))?;
                let found: Vec<Point> = points.iter().flatten().cloned().collect();
                let shape = if found.len() == points.len() {
                    OverlayShape::Polygon(found)
                } else {
                    OverlayShape::Points(found)
                };
                scene.add(Overlay::new(
                    format!("{kind:?} ball, radius {radius}"),
                    shape,
                    "#c0392b",
                ))?;
                write(&path, &scene.to_svg())?;
            }
            let report = BallReport {
                kind,
                center: &center,
                radius,
                points,
            };
            emit(
                &serde_json::to_string_pretty(&report).expect("serializable"),
                json.as_deref(),
            )?;
        }
        Command::Verify {
            suite,
            seed,
            trials,
            check_tol,
        } => {
            let report = verify::run(
                suite,
                &VerifyConfig {
                    seed,
                    trials,
                    check_tol,
                },
            )?;
            emit(&report.to_json(), None)?;
            if !report.passed {
                return Ok(EXIT_FAILURE);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    if let Ok(raw) = std::env::var(TOL_ENV_VAR) {
        match raw.trim().parse::<f64>() {
            Ok(eps) if set_geo_eps(eps) => {}
            _ => {
                eprintln!("hilbgeom: {TOL_ENV_VAR} must be a positive number, got {raw:?}");
                return ExitCode::from(EXIT_FAILURE);
            }
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("hilbgeom: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
