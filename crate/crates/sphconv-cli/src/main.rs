//! `sphconv`: spherical-geometry quantities and checks for maps of the
//! unit disk.
//!
//! Exit codes: 0 success, 1 failed check or negative convexity scan,
//! 2 expression/argument parse error, 3 evaluation error, 4 I/O error.

mod figures;
mod format;

use clap::{Args, Parser, Subcommand, ValueEnum};
use format::sig15;
use num_complex::Complex64;
use sphconv::expr::{builtin, parse, parse_complex, MapDefinition};
use sphconv::quad::{self, QuadratureConfig, Quantity};
use sphconv::verify::{self, CheckStatus};
use sphconv::{sphgeo, tolerances};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sphconv",
    version,
    about = "Spherical derivative, convexity function and spherical length/area/curvature of maps of the unit disk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MapArgs {
    /// Expression in z, e.g. "z^2*exp(z)"
    #[arg(long = "fn", value_name = "EXPR", conflicts_with = "builtin")]
    function: Option<String>,
    /// Catalog map: identity, scale(eta), rot(a,theta), invrot(theta), f1, f2, f3
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Args)]
struct QuadArgs {
    /// Angular nodes (power of two >= 16); defaults to $SPHCONV_NODES or 256
    #[arg(long, value_name = "N")]
    nodes: Option<usize>,
    /// Radial Gauss-Legendre nodes (>= 8)
    #[arg(long, value_name = "M", default_value_t = QuadratureConfig::DEFAULT_RADIAL)]
    radial: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum PointQuantity {
    /// Spherical derivative |f'|/(1+|f|^2)
    Fsharp,
    /// Convexity function Re{1 + z f''/f' - 2 z f' conj(f)/(1+|f|^2)}
    H,
    /// Spherical curvature of the image circle through z
    Kappa,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveQuantity {
    Lenratio,
    Arearatio,
    Curvratio,
    Hyplenratio,
    Logmean,
}

impl From<CurveQuantity> for Quantity {
    fn from(q: CurveQuantity) -> Quantity {
        match q {
            CurveQuantity::Lenratio => Quantity::LenRatio,
            CurveQuantity::Arearatio => Quantity::AreaRatio,
            CurveQuantity::Curvratio => Quantity::CurvRatio,
            CurveQuantity::Hyplenratio => Quantity::HypLenRatio,
            CurveQuantity::Logmean => Quantity::LogMean,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a pointwise quantity at z
    Eval {
        #[command(flatten)]
        map: MapArgs,
        /// Point in the unit disk, written like 0.5 or 0.3+0.2i
        #[arg(long, value_name = "Z")]
        z: String,
        #[arg(long, value_enum, default_value_t = PointQuantity::Fsharp)]
        quantity: PointQuantity,
    },
    /// Sample a radial quantity on a uniform grid and write a CSV profile
    Curve {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, value_enum)]
        quantity: CurveQuantity,
        #[arg(long, default_value_t = 0.05)]
        rmin: f64,
        #[arg(long, default_value_t = 0.95)]
        rmax: f64,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[command(flatten)]
        quad: QuadArgs,
        /// Output CSV path
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Scan the convexity function h over a polar grid
    Scan {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 0.95)]
        rmax: f64,
        #[arg(long, default_value_t = 100)]
        radii: usize,
        #[arg(long, default_value_t = 256)]
        angles: usize,
    },
    /// Run every applicable check and print one line per result
    Verify {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        quad: QuadArgs,
        /// Seed for the randomly placed interior points of the Laplacian check
        #[arg(long, default_value_t = tolerances::DEFAULT_SEED)]
        seed: u64,
        /// Emit the report as JSON instead of a table
        #[arg(long, conflicts_with = "table")]
        json: bool,
        /// Emit the report as a table (default)
        #[arg(long)]
        table: bool,
    },
    /// Write the standard set of figure CSV files
    Figures {
        /// Output directory
        #[arg(long, value_name = "DIR")]
        outdir: PathBuf,
        #[command(flatten)]
        quad: QuadArgs,
    },
}

enum CliError {
    Parse(String),
    Eval(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Eval(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Eval(m) | CliError::Io(m) => m,
        }
    }
}

fn resolve_map(args: &MapArgs) -> Result<MapDefinition, CliError> {
    match (&args.function, &args.builtin) {
        (Some(src), None) => {
            let ast = parse(src).map_err(|e| CliError::Parse(e.to_string()))?;
            Ok(MapDefinition::from_expr(src.clone(), ast))
        }
        (None, Some(name)) => builtin(name).map_err(|e| CliError::Parse(e.to_string())),
        _ => Err(CliError::Parse(
            "exactly one of --fn or --builtin is required".to_string(),
        )),
    }
}

fn resolve_config(args: &QuadArgs) -> Result<QuadratureConfig, CliError> {
    let nodes = match args.nodes {
        Some(n) => n,
        None => match std::env::var("SPHCONV_NODES") {
            Ok(s) => s.parse().map_err(|_| {
                CliError::Parse(format!("SPHCONV_NODES must be an integer, got `{s}`"))
            })?,
            Err(_) => QuadratureConfig::DEFAULT_ANGULAR,
        },
    };
    QuadratureConfig::new(nodes, args.radial).map_err(|e| CliError::Parse(e.to_string()))
}

fn parse_point(s: &str) -> Result<Complex64, CliError> {
    parse_complex(s).map_err(|e| CliError::Parse(e.to_string()))
}

fn cmd_eval(map: &MapArgs, z: &str, quantity: PointQuantity) -> Result<u8, CliError> {
    let map = resolve_map(map)?;
    let z = parse_point(z)?;
    if z.norm() >= 1.0 {
        return Err(CliError::Parse(format!(
            "point must lie in the unit disk, got |z| = {}",
            z.norm()
        )));
    }
    let value = match quantity {
        PointQuantity::Fsharp => sphgeo::spherical_derivative(&map, z),
        PointQuantity::H => sphgeo::h(&map, z),
        PointQuantity::Kappa => sphgeo::curvature_image_circle(&map, z),
    }
    .map_err(|e| CliError::Eval(e.to_string()))?;
    println!("{}", sig15(value));
    Ok(0)
}

fn cmd_curve(
    map_args: &MapArgs,
    quantity: CurveQuantity,
    rmin: f64,
    rmax: f64,
    steps: usize,
    quad_args: &QuadArgs,
    out: &PathBuf,
) -> Result<u8, CliError> {
    let map = resolve_map(map_args)?;
    let config = resolve_config(quad_args)?;
    let profile = quad::radial_profile(&map, quantity.into(), rmin, rmax, steps, &config)
        .map_err(|e| CliError::Eval(e.to_string()))?;
    std::fs::write(out, figures::profile_csv(&profile))
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", out.display())))?;

    match verify::classify_monotone(&profile, tolerances::MONOTONICITY_SLACK) {
        Ok(verdict) => {
            let gaps = profile.samples.iter().filter(|s| s.value.is_none()).count();
            print!(
                "{} for {}: {:?} ({} samples on [{}, {}]",
                profile.quantity.column_name(),
                profile.map_name,
                verdict.classification,
                steps,
                sig15(rmin),
                sig15(rmax),
            );
            if gaps > 0 {
                print!(", {gaps} gaps");
            }
            println!(")");
            if let Some(w) = verdict.witness {
                println!(
                    "witness: r = ({}, {}) with values ({}, {})",
                    sig15(w.r_before),
                    sig15(w.r_after),
                    sig15(w.value_before),
                    sig15(w.value_after)
                );
            }
        }
        Err(e) => println!("classification unavailable: {e}"),
    }
    Ok(0)
}

fn cmd_scan(map_args: &MapArgs, rmax: f64, radii: usize, angles: usize) -> Result<u8, CliError> {
    let map = resolve_map(map_args)?;
    let report = verify::convexity_scan(&map, rmax, radii, angles)
        .map_err(|e| CliError::Eval(e.to_string()))?;
    println!(
        "min h = {} at z = {}+{}i ({}x{} grid, r <= {}{})",
        sig15(report.min_h),
        sig15(report.argmin.re),
        sig15(report.argmin.im),
        report.radii,
        report.angles,
        sig15(report.r_max),
        if report.skipped_points > 0 {
            format!(", {} points skipped", report.skipped_points)
        } else {
            String::new()
        }
    );
    if report.is_nonnegative {
        println!("verdict: h is nonnegative on the sampled grid");
        Ok(0)
    } else {
        println!("verdict: h attains negative values");
        Ok(1)
    }
}

fn cmd_verify(map_args: &MapArgs, quad_args: &QuadArgs, seed: u64, json: bool) -> Result<u8, CliError> {
    let map = resolve_map(map_args)?;
    let config = resolve_config(quad_args)?;
    let results = verify::verify_all(&map, &config, seed);
    if json {
        let text = serde_json::to_string_pretty(&results)
            .map_err(|e| CliError::Io(e.to_string()))?;
        println!("{text}");
    } else {
        for res in &results {
            let status = match &res.status {
                CheckStatus::Pass => "PASS".to_string(),
                CheckStatus::Fail => "FAIL".to_string(),
                CheckStatus::Skipped(reason) => format!("SKIP ({reason})"),
            };
            let residual = res
                .residual
                .map(|v| format!(" residual={}", sig15(v)))
                .unwrap_or_default();
            let tol = res
                .tol
                .map(|v| format!(" tol={}", sig15(v)))
                .unwrap_or_default();
            println!("{:<28} {}{}{} | {}", res.name, status, residual, tol, res.detail);
        }
    }
    let failures = results.iter().filter(|r| r.is_fail()).count();
    if failures == 0 {
        Ok(0)
    } else {
        eprintln!("{failures} check(s) failed");
        Ok(1)
    }
}

fn cmd_figures(outdir: &PathBuf, quad_args: &QuadArgs) -> Result<u8, CliError> {
    let config = resolve_config(quad_args)?;
    let written = figures::write_all(outdir, &config)
        .map_err(|e| CliError::Io(format!("cannot write figures: {e}")))?;
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Eval { map, z, quantity } => cmd_eval(map, z, *quantity),
        Command::Curve {
            map,
            quantity,
            rmin,
            rmax,
            steps,
            quad,
            out,
        } => cmd_curve(map, *quantity, *rmin, *rmax, *steps, quad, out),
        Command::Scan {
            map,
            rmax,
            radii,
            angles,
        } => cmd_scan(map, *rmax, *radii, *angles),
        Command::Verify {
            map,
            quad,
            seed,
            json,
            table: _,
        } => cmd_verify(map, quad, *seed, *json),
        Command::Figures { outdir, quad } => cmd_figures(outdir, quad),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
