//! `kahler-cv` — contour calculus on the real plane from the command line.
//!
//! Fields are expressions in `z` (with `I` the unit `dxdy`); curves are
//! circles or polylines; every numeric answer is an edif printed as
//! `u + v·dxdy`, or as `{"u":…,"v":…}` with `--json`. Identical invocations
//! produce byte-identical output.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use kahler::cauchy::{
    cauchy_derivative, cauchy_value, decompose_valuation, default_residue_radius, goursat_residual,
    residue, PoleSpec,
};
use kahler::contour::{valuation_potential, valuation_traced};
use kahler::expr::{is_strict_harmonic, parse_expr, sample_grid};
use kahler::{
    CrResidual, Curve, Edif, Error, IntegrandSample, Orientation, Point, QuadratureConfig,
    RawField, ValuationResult,
};

const EXIT_HELP: &str = "Exit codes:
  0  success
  2  expression or argument parse error
  3  numerical failure (singular sample, non-finite value, budget exhausted)
  4  geometry violation (point outside curve, overlapping circles, bad config)

The KAHLER_CV_TOL environment variable overrides the default relative
quadrature tolerance; an explicit --rel-tol wins over it.";

#[derive(Parser)]
#[command(
    name = "kahler-cv",
    version,
    about = "Contour calculus with even differential forms on the real plane",
    after_help = EXIT_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct NumericOpts {
    /// Relative quadrature tolerance (default 1e-10, or KAHLER_CV_TOL)
    #[arg(long, value_name = "TOL")]
    rel_tol: Option<f64>,
    /// Absolute quadrature tolerance (default 1e-12)
    #[arg(long, value_name = "TOL")]
    abs_tol: Option<f64>,
    /// Integrand evaluation budget (default 1000000)
    #[arg(long, value_name = "N")]
    max_evals: Option<usize>,
    /// Emit machine-readable JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CurveOpts {
    /// Circle as "cx,cy,r" or "cx,cy,r,ccw|cw" (counterclockwise default)
    #[arg(long, value_name = "CX,CY,R[,ORIENT]", allow_hyphen_values = true)]
    circle: Option<String>,
    /// Polyline vertices "x,y;x,y;…" (closed unless --open)
    #[arg(long, value_name = "PTS", allow_hyphen_values = true)]
    polyline: Option<String>,
    /// Treat the polyline as an open path
    #[arg(long)]
    open: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Valuation of a field over a curve
    Valuate {
        /// Field expression in z
        #[arg(short, long)]
        expr: String,
        #[command(flatten)]
        curve: CurveOpts,
        #[command(flatten)]
        num: NumericOpts,
        /// Write integrand samples as CSV (t,x,y,u,v)
        #[arg(long, value_name = "PATH")]
        dump_samples: Option<PathBuf>,
    },
    /// Reconstruct the field value at a point from a contour around it
    Cauchy {
        #[arg(short, long)]
        expr: String,
        /// Evaluation point "x,y", strictly inside the curve
        #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
        at: String,
        #[command(flatten)]
        curve: CurveOpts,
        #[command(flatten)]
        num: NumericOpts,
    },
    /// n-th derivative at a point from a contour around it
    Derivative {
        #[arg(short, long)]
        expr: String,
        #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
        at: String,
        /// Derivative order n >= 1
        #[arg(long, value_name = "N")]
        order: u32,
        #[command(flatten)]
        curve: CurveOpts,
        #[command(flatten)]
        num: NumericOpts,
    },
    /// Residue at a declared pole
    Residue {
        #[arg(short, long)]
        expr: String,
        /// Pole location "x,y"
        #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
        pole: String,
        /// Circle radius about the pole (default 1)
        #[arg(long, value_name = "R")]
        radius: Option<f64>,
        #[command(flatten)]
        num: NumericOpts,
    },
    /// Valuation over an outer curve against per-pole circle valuations
    Decompose {
        #[arg(short, long)]
        expr: String,
        /// Declared pole "x,y" (repeat per pole)
        #[arg(long = "pole", value_name = "X,Y", allow_hyphen_values = true)]
        poles: Vec<String>,
        /// Circle radius (repeat, paired with --pole; default rule otherwise)
        #[arg(long = "radius", value_name = "R")]
        radii: Vec<f64>,
        #[command(flatten)]
        curve: CurveOpts,
        #[command(flatten)]
        num: NumericOpts,
    },
    /// Valuation potential from a base point to a target point
    Potential {
        #[arg(short, long)]
        expr: String,
        /// Base point "x,y" where the potential is pinned to 0
        #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
        from: String,
        /// Target point "x,y"
        #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
        to: String,
        /// Open polyline path from base to target (default: straight segment)
        #[arg(long, value_name = "PTS", allow_hyphen_values = true)]
        path: Option<String>,
        #[command(flatten)]
        num: NumericOpts,
        #[arg(long, value_name = "PATH")]
        dump_samples: Option<PathBuf>,
    },
    /// Sample-based Cauchy-Riemann (strict harmonicity) check
    Check {
        /// Field expression in z
        #[arg(short, long)]
        expr: Option<String>,
        /// Built-in raw test field: abs, x, or conj
        #[arg(long, value_name = "NAME", conflicts_with = "expr")]
        raw: Option<String>,
        /// Sample grid "x0,x1,y0,y1,n"
        #[arg(long, value_name = "X0,X1,Y0,Y1,N", allow_hyphen_values = true)]
        grid: String,
        /// Residual tolerance (default 1e-6)
        #[arg(long, value_name = "TOL")]
        tol: Option<f64>,
        /// Emit machine-readable JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Norm of the valuation over a closed curve (0 certifies a shedif)
    Goursat {
        #[arg(short, long)]
        expr: String,
        #[command(flatten)]
        curve: CurveOpts,
        #[command(flatten)]
        num: NumericOpts,
        #[arg(long, value_name = "PATH")]
        dump_samples: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Parse { .. } => 2,
            Error::ZeroDivisor
            | Error::ZeroEdif
            | Error::NonFinite
            | Error::SingularEvaluation { .. }
            | Error::SingularOnCurve { .. }
            | Error::Budget { .. } => 3,
            Error::NotDifferentiable(_)
            | Error::PoleOnOrOutside { .. }
            | Error::Geometry(_)
            | Error::Config(_) => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure {
            code: 4,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Valuate {
            expr,
            curve,
            num,
            dump_samples,
        } => {
            let field = parse_expr(&expr)?;
            let curve = curve.resolve()?;
            let cfg = num.config()?;
            let (result, samples) = valuation_traced(&field, &curve, &cfg)?;
            if let Some(path) = dump_samples {
                write_samples(&path, &samples)?;
            }
            if num.json {
                println!("{}", to_json(&result));
            } else {
                print_valuation(&result);
            }
            Ok(())
        }
        Command::Cauchy {
            expr,
            at,
            curve,
            num,
        } => {
            let field = parse_expr(&expr)?;
            let at = parse_point(&at)?;
            let curve = curve.resolve()?;
            let cfg = num.config()?;
            let value = cauchy_value(&field, at, &curve, &cfg)?;
            print_value(value, num.json);
            Ok(())
        }
        Command::Derivative {
            expr,
            at,
            order,
            curve,
            num,
        } => {
            if order == 0 {
                return Err(Failure::usage("--order must be at least 1"));
            }
            let field = parse_expr(&expr)?;
            let at = parse_point(&at)?;
            let curve = curve.resolve()?;
            let cfg = num.config()?;
            let value = cauchy_derivative(&field, at, order, &curve, &cfg)?;
            print_value(value, num.json);
            Ok(())
        }
        Command::Residue {
            expr,
            pole,
            radius,
            num,
        } => {
            let field = parse_expr(&expr)?;
            let pole = PoleSpec::at(parse_point(&pole)?);
            let radius = radius.unwrap_or_else(|| default_residue_radius(pole.location, &[]));
            let cfg = num.config()?;
            let report = residue(&field, &pole, radius, &cfg)?;
            if num.json {
                println!("{}", to_json(&report));
            } else {
                println!("residue: {}", report.residue);
                println!(
                    "pole: ({}, {})",
                    report.pole.location.x, report.pole.location.y
                );
                println!("radius: {}", report.circle_radius);
                println!("error estimate: {:e}", report.error_estimate);
            }
            Ok(())
        }
        Command::Decompose {
            expr,
            poles,
            radii,
            curve,
            num,
        } => {
            let field = parse_expr(&expr)?;
            let curve = curve.resolve()?;
            let cfg = num.config()?;
            let poles: Vec<PoleSpec> = poles
                .iter()
                .map(|s| Ok(PoleSpec::at(parse_point(s)?)))
                .collect::<Result<_, Failure>>()?;
            let radii = if radii.is_empty() {
                poles
                    .iter()
                    .map(|p| {
                        let others: Vec<PoleSpec> = poles
                            .iter()
                            .filter(|q| q.location != p.location)
                            .copied()
                            .collect();
                        default_residue_radius(p.location, &others)
                    })
                    .collect()
            } else {
                radii
            };
            let (lhs, rhs) = decompose_valuation(&field, &curve, &poles, &radii, &cfg)?;
            #[derive(Serialize)]
            struct Decomposition {
                lhs: ValuationResult,
                rhs: ValuationResult,
                difference_norm: f64,
                summed_error_estimate: f64,
            }
            let out = Decomposition {
                difference_norm: (lhs.value - rhs.value).norm(),
                summed_error_estimate: lhs.abs_error_estimate + rhs.abs_error_estimate,
                lhs,
                rhs,
            };
            if num.json {
                println!("{}", to_json(&out));
            } else {
                println!("lhs: {}", out.lhs.value);
                println!("rhs: {}", out.rhs.value);
                println!("difference: {:e}", out.difference_norm);
                println!("summed error estimate: {:e}", out.summed_error_estimate);
            }
            Ok(())
        }
        Command::Potential {
            expr,
            from,
            to,
            path,
            num,
            dump_samples,
        } => {
            let field = parse_expr(&expr)?;
            let base = parse_point(&from)?;
            let target = parse_point(&to)?;
            let path = match path {
                Some(text) => parse_polyline(&text, false)?,
                None => Curve::segment(base, target)?,
            };
            let cfg = num.config()?;
            let value = if let Some(csv) = dump_samples {
                let (result, samples) = valuation_traced(&field, &path, &cfg)?;
                // endpoint validation mirrors valuation_potential
                let _ = valuation_potential(&field, base, target, &path, &cfg)?;
                write_samples(&csv, &samples)?;
                result.value
            } else {
                valuation_potential(&field, base, target, &path, &cfg)?
            };
            print_value(value, num.json);
            Ok(())
        }
        Command::Check {
            expr,
            raw,
            grid,
            tol,
            json,
        } => {
            let samples = parse_grid(&grid)?;
            let tol = tol.unwrap_or(1e-6);
            let (ok, worst) = match (&expr, &raw) {
                (Some(text), None) => {
                    let field = parse_expr(text)?;
                    is_strict_harmonic(&field, &samples, tol)?
                }
                (None, Some(name)) => {
                    let field = raw_field(name)?;
                    is_strict_harmonic(&field, &samples, tol)?
                }
                _ => return Err(Failure::usage("check needs exactly one of --expr or --raw")),
            };
            #[derive(Serialize)]
            struct CheckOutput {
                shedif: bool,
                tol: f64,
                worst: CrResidual,
            }
            if json {
                println!(
                    "{}",
                    to_json(&CheckOutput {
                        shedif: ok,
                        tol,
                        worst
                    })
                );
            } else {
                println!("shedif: {ok}");
                println!(
                    "worst residual: {:e} (r1 = {:e}, r2 = {:e}) at ({}, {})",
                    worst.magnitude(),
                    worst.r1,
                    worst.r2,
                    worst.at.x,
                    worst.at.y
                );
            }
            Ok(())
        }
        Command::Goursat {
            expr,
            curve,
            num,
            dump_samples,
        } => {
            let field = parse_expr(&expr)?;
            let curve = curve.resolve()?;
            let cfg = num.config()?;
            let residual = if let Some(csv) = dump_samples {
                if !curve.is_closed() {
                    return Err(Failure::from(Error::Geometry(
                        "the vanishing-valuation check requires a closed curve".into(),
                    )));
                }
                let (result, samples) = valuation_traced(&field, &curve, &cfg)?;
                write_samples(&csv, &samples)?;
                result.value.norm()
            } else {
                goursat_residual(&field, &curve, &cfg)?
            };
            if num.json {
                println!("{{\"residual\":{}}}", json_f64(residual));
            } else {
                println!("residual: {residual:e}");
            }
            Ok(())
        }
    }
}

impl NumericOpts {
    fn config(&self) -> Result<QuadratureConfig, Failure> {
        let mut cfg = QuadratureConfig::default();
        match (self.rel_tol, std::env::var("KAHLER_CV_TOL").ok()) {
            (Some(tol), _) => cfg.rel_tol = tol,
            (None, Some(text)) => {
                cfg.rel_tol = text.parse().map_err(|_| {
                    Failure::usage(format!("KAHLER_CV_TOL is not a number: {text:?}"))
                })?;
            }
            (None, None) => {}
        }
        if let Some(tol) = self.abs_tol {
            cfg.abs_tol = tol;
        }
        if let Some(n) = self.max_evals {
            cfg.max_evals = n;
        }
        Ok(cfg)
    }
}

impl CurveOpts {
    fn resolve(&self) -> Result<Curve, Failure> {
        match (&self.circle, &self.polyline) {
            (Some(text), None) => parse_circle(text),
            (None, Some(text)) => parse_polyline(text, !self.open),
            _ => Err(Failure::usage(
                "exactly one of --circle or --polyline is required",
            )),
        }
    }
}

fn parse_point(text: &str) -> Result<Point, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Failure::usage(format!("expected \"x,y\", got {text:?}")));
    }
    let x = parse_f64(parts[0])?;
    let y = parse_f64(parts[1])?;
    Ok(Point::new(x, y))
}

fn parse_f64(text: &str) -> Result<f64, Failure> {
    text.parse()
        .map_err(|_| Failure::usage(format!("not a number: {text:?}")))
}

fn parse_circle(text: &str) -> Result<Curve, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 && parts.len() != 4 {
        return Err(Failure::usage(format!(
            "expected \"cx,cy,r\" or \"cx,cy,r,ccw|cw\", got {text:?}"
        )));
    }
    let center = Point::new(parse_f64(parts[0])?, parse_f64(parts[1])?);
    let radius = parse_f64(parts[2])?;
    let orientation = match parts.get(3) {
        None => Orientation::Ccw,
        Some(&"ccw") => Orientation::Ccw,
        Some(&"cw") => Orientation::Cw,
        Some(other) => {
            return Err(Failure::usage(format!(
                "orientation must be ccw or cw, got {other:?}"
            )))
        }
    };
    Ok(Curve::circle(center, radius, orientation)?)
}

fn parse_polyline(text: &str, closed: bool) -> Result<Curve, Failure> {
    let vertices: Vec<Point> = text
        .split([';', ' '])
        .filter(|chunk| !chunk.is_empty())
        .map(parse_point)
        .collect::<Result<_, _>>()?;
    Ok(Curve::polyline(vertices, closed)?)
}

fn parse_grid(text: &str) -> Result<Vec<Point>, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 5 {
        return Err(Failure::usage(format!(
            "expected \"x0,x1,y0,y1,n\", got {text:?}"
        )));
    }
    let n: usize = parts[4]
        .parse()
        .map_err(|_| Failure::usage(format!("grid size is not an integer: {:?}", parts[4])))?;
    if n == 0 {
        return Err(Failure::usage("grid size must be at least 1"));
    }
    Ok(sample_grid(
        parse_f64(parts[0])?,
        parse_f64(parts[1])?,
        parse_f64(parts[2])?,
        parse_f64(parts[3])?,
        n,
    ))
}

fn raw_field(name: &str) -> Result<RawField, Failure> {
    match name {
        // modulus-like field: u = |z|, plainly not strict harmonic
        "abs" => Ok(RawField {
            u: |x, y| x.hypot(y),
            v: |_, _| 0.0,
        }),
        "x" => Ok(RawField {
            u: |x, _| x,
            v: |_, _| 0.0,
        }),
        "conj" => Ok(RawField {
            u: |x, _| x,
            v: |_, y| -y,
        }),
        other => Err(Failure::usage(format!(
            "unknown raw field {other:?} (available: abs, x, conj)"
        ))),
    }
}

fn print_value(value: Edif, json: bool) {
    if json {
        #[derive(Serialize)]
        struct Output {
            value: Edif,
        }
        println!("{}", to_json(&Output { value }));
    } else {
        println!("value: {value}");
    }
}

fn print_valuation(result: &ValuationResult) {
    println!("value: {}", result.value);
    println!("abs error estimate: {:e}", result.abs_error_estimate);
    println!("integrand evals: {}", result.integrand_evals);
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("output serialization cannot fail")
}

fn json_f64(x: f64) -> String {
    serde_json::to_string(&x).expect("finite float")
}

fn write_samples(path: &PathBuf, samples: &[IntegrandSample]) -> Result<(), Failure> {
    let mut csv = String::with_capacity(samples.len() * 64 + 16);
    csv.push_str("t,x,y,u,v\n");
    for s in samples {
        writeln!(csv, "{},{},{},{},{}", s.t, s.x, s.y, s.u, s.v).expect("string write");
    }
    std::fs::write(path, csv)?;
    Ok(())
}
