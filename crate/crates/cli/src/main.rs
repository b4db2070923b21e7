use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use isopair_core::oracle::{
    gamma1_empty_check, gamma2_series_test, joint_adjoint_kernel_smin, window_smin_scan,
};
use isopair_core::regions::{area_fraction, gamma2_region, gamma3_region, RegionSpec};
use isopair_core::shifts::{fringe_operator, ppi_census, ridge_bounds, sigma_ap_predict};
use isopair_core::{
    compute_params, taylor_region, DiagramProfile, Error, ExtInt, Membership, Rect, ScanOptions,
    StructureReport,
};

#[derive(Parser)]
#[command(
    name = "isopair",
    version,
    about = "Taylor spectra of commuting isometric pairs given by lattice diagrams"
)]
struct Cli {
    /// Half-width of the boundary band, in log-modulus units.
    #[arg(long, global = true, default_value_t = isopair_core::DEFAULT_TOL)]
    tol: f64,
    /// Seed for Monte Carlo estimates.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a diagram spec and print its structure.
    Validate { spec: PathBuf },
    /// Structure, parameters and the three spectral sets as JSON.
    Report {
        spec: PathBuf,
        /// Monte Carlo samples for the area fraction.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// The six spectral parameters as exact rationals.
    Params { spec: PathBuf },
    /// Tri-state membership of one point.
    Member {
        spec: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        mu: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
    },
    /// Tri-states on a uniform grid of `[0, 1]²`, as CSV.
    Sample {
        spec: PathBuf,
        #[arg(long, default_value_t = 101)]
        resolution: usize,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Taylor spectrum in the `(|μ|, |λ|)` square as a binary PPM.
    Raster {
        spec: PathBuf,
        #[arg(long, default_value_t = 256)]
        width: usize,
        #[arg(long, default_value_t = 256)]
        height: usize,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// The fringe shift at a fixed `|μ|`: kind, weights and ridge values.
    Fringe {
        spec: PathBuf,
        #[arg(long)]
        mu: f64,
        /// Number of leading weights to print.
        #[arg(long, default_value_t = 16)]
        weights: usize,
    },
    /// Numerical witnesses.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Sliding-window singular values of `λ - T` for the fringe shift.
    Fringe {
        #[command(flatten)]
        point: RealPoint,
        #[arg(long, value_delimiter = ',', default_values_t = [256usize, 1024, 4096])]
        sizes: Vec<usize>,
        /// Window starts range over `[-j_scan, j_scan]` (default: twice the largest size).
        #[arg(long)]
        j_scan: Option<i64>,
    },
    /// Root test for the series deciding the second part.
    Gamma2 {
        #[command(flatten)]
        point: RealPoint,
        #[arg(long, default_value_t = 100_000)]
        terms: i64,
    },
    /// Common adjoint kernel (third condition) and joint kernel witnesses on a window ladder.
    T3 {
        spec: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        mu: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        /// `n` (square `[-n, n]²`), a comma list of such `n`, or `i_min:i_max:j_min:j_max`.
        #[arg(long, default_value = "20,40,80")]
        window: String,
    },
}

#[derive(Args)]
struct RealPoint {
    spec: PathBuf,
    #[arg(long)]
    mu: f64,
    #[arg(long)]
    lambda: f64,
}

/// `re` or `re,im`.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err("expected `re` or `re,im`".into()),
    }
}

fn parse_windows(s: &str) -> anyhow::Result<Vec<Rect>> {
    if s.contains(':') {
        let v: Vec<i64> = s
            .split(':')
            .map(|t| t.trim().parse())
            .collect::<Result<_, _>>()?;
        let [i0, i1, j0, j1] = v[..] else {
            bail!("rectangle needs i_min:i_max:j_min:j_max")
        };
        return Ok(vec![Rect::new(i0, i1, j0, j1)]);
    }
    s.split(',')
        .map(|t| Ok(Rect::centered(0, 0, t.trim().parse()?)))
        .collect()
}

fn load(path: &Path) -> anyhow::Result<DiagramProfile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let profile = DiagramProfile::from_json(&text)
        .with_context(|| format!("parsing diagram spec {}", path.display()))?;
    Ok(profile)
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// Structure with the index ends reduced to finite/infinite, so reports do not move under translation.
fn structure_json(s: &StructureReport) -> Value {
    let end = |e: ExtInt| {
        if e.is_finite() {
            "finite".to_string()
        } else {
            e.to_string()
        }
    };
    json!({
        "is_simple": s.is_simple,
        "defect_class": s.defect_class,
        "wold_w": s.wold_w,
        "wold_z": s.wold_z,
        "j0": end(s.j0),
        "j1": end(s.j1),
    })
}

fn regions(profile: &DiagramProfile) -> isopair_core::Result<[RegionSpec; 3]> {
    let s = profile.validate()?;
    let p = compute_params(profile)?;
    Ok([
        taylor_region(&p),
        gamma2_region(&p, &s),
        gamma3_region(&p, &s),
    ])
}

fn report(cli: &Cli, profile: &DiagramProfile, samples: usize) -> anyhow::Result<Value> {
    let s = profile.validate()?;
    let mut out = json!({ "input": profile, "structure": structure_json(&s) });
    if s.is_simple {
        out["note"] = json!(
            "simple diagrams define doubly commuting pairs; their spectra are not described by the band parameters"
        );
        return Ok(out);
    }
    let p = compute_params(profile)?;
    let [taylor, g2, g3] = regions(profile)?;
    let area = area_fraction(&taylor, samples, cli.seed, cli.tol);
    out["params"] = json!(p);
    out["taylor_band"] = json!({ "p": taylor.bands[0].p, "q": taylor.bands[0].q });
    out["gamma2"] = json!({
        "eta_minus": p.eta_minus,
        "eta_plus": p.eta_plus,
        "axis_rules": g2.axis_rules,
    });
    out["gamma3"] = json!({
        "case": g3.wold_case,
        "bands": g3.bands,
        "axis_rules": g3.axis_rules,
        "origin_included": g3.origin_included,
    });
    out["area_fraction"] = json!({
        "fraction": area.fraction,
        "std_error": area.std_error,
        "samples": area.samples,
        "seed": cli.seed,
    });
    Ok(out)
}

const IN_RGB: [u8; 3] = [30, 30, 200];
const BOUNDARY_RGB: [u8; 3] = [240, 200, 40];
const OUT_RGB: [u8; 3] = [245, 245, 245];

fn color(m: Membership) -> [u8; 3] {
    match m {
        Membership::Inside => IN_RGB,
        Membership::Boundary => BOUNDARY_RGB,
        Membership::Outside => OUT_RGB,
    }
}

fn sample(
    cli: &Cli,
    profile: &DiagramProfile,
    resolution: usize,
    out: &Path,
) -> anyhow::Result<()> {
    if resolution < 2 {
        bail!(Error::InvalidArgument(
            "resolution must be at least 2".into()
        ));
    }
    let sets = regions(profile)?;
    let d = (resolution - 1) as f64;
    let rows: Vec<[Membership; 3]> = (0..resolution * resolution)
        .into_par_iter()
        .map(|k| {
            let (a, b) = ((k / resolution) as f64 / d, (k % resolution) as f64 / d);
            sets.each_ref().map(|r| {
                r.member(a, b, cli.tol)
                    .expect("grid lies in the unit square")
                    .state
            })
        })
        .collect();
    let file = File::create(out).with_context(|| format!("creating {}", out.display()))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    w.write_record(["mu_abs", "lambda_abs", "taylor", "gamma2", "gamma3"])?;
    for (k, row) in rows.iter().enumerate() {
        let (a, b) = ((k / resolution) as f64 / d, (k % resolution) as f64 / d);
        w.write_record([
            a.to_string(),
            b.to_string(),
            row[0].to_string(),
            row[1].to_string(),
            row[2].to_string(),
        ])
        .with_context(|| format!("writing {}", out.display()))?;
    }
    w.flush()
        .with_context(|| format!("writing {}", out.display()))?;
    Ok(())
}

fn raster(
    cli: &Cli,
    profile: &DiagramProfile,
    width: usize,
    height: usize,
    out: &Path,
) -> anyhow::Result<()> {
    if width < 16 || height < 16 {
        bail!(Error::InvalidArgument(
            "raster needs width and height of at least 16".into()
        ));
    }
    let [taylor, ..] = regions(profile)?;
    let pixels: Vec<u8> = (0..height)
        .into_par_iter()
        .flat_map_iter(|r| {
            // PPM rows run top-down; |λ| grows upwards
            let b = (height - 1 - r) as f64 / (height - 1) as f64;
            let taylor = &taylor;
            (0..width).flat_map(move |c| {
                let a = c as f64 / (width - 1) as f64;
                color(
                    taylor
                        .member(a, b, cli.tol)
                        .expect("pixel lies in the unit square")
                        .state,
                )
            })
        })
        .collect();
    let file = File::create(out).with_context(|| format!("creating {}", out.display()))?;
    let mut w = BufWriter::new(file);
    write!(w, "P6\n{width} {height}\n255\n")?;
    w.write_all(&pixels)?;
    w.flush()
        .with_context(|| format!("writing {}", out.display()))?;
    Ok(())
}

fn fringe(profile: &DiagramProfile, mu: f64, weights: usize) -> anyhow::Result<Value> {
    if mu == 0.0 {
        return Ok(json!({ "mu_abs": 0.0, "census": ppi_census(profile, 64)? }));
    }
    let spec = fringe_operator(profile, mu)?;
    let bounds = ridge_bounds(&spec, &compute_params(profile)?);
    let [i_minus, i_plus, r_minus, r_plus] = bounds.values();
    Ok(json!({
        "mu_abs": mu,
        "kind": spec.kind,
        "j0": spec.j0,
        "j1": spec.j1,
        "weights": spec.first_weights(weights),
        "ridge_exponents": bounds,
        "ridge_values": { "i_minus": i_minus, "i_plus": i_plus, "r_minus": r_minus, "r_plus": r_plus },
    }))
}

fn oracle(cli: &Cli, cmd: &OracleCommand) -> anyhow::Result<Value> {
    match cmd {
        OracleCommand::Fringe {
            point,
            sizes,
            j_scan,
        } => {
            let profile = load(&point.spec)?;
            let spec = fringe_operator(&profile, point.mu)?;
            let bounds = ridge_bounds(&spec, &compute_params(&profile)?);
            let mut opts = ScanOptions::new(sizes.clone());
            if let Some(j) = j_scan {
                opts.j_scan = *j;
            }
            let scan = window_smin_scan(&spec, point.lambda, &opts)?;
            let predicted = sigma_ap_predict(&spec, &bounds, point.lambda, cli.tol)?;
            Ok(
                json!({ "kind": spec.kind, "options": opts, "scan": scan, "predicted": predicted.state }),
            )
        }
        OracleCommand::Gamma2 { point, terms } => {
            let profile = load(&point.spec)?;
            let margin = (10.0 * cli.tol).max(1e-2);
            let verdict = gamma2_series_test(&profile, point.mu, point.lambda, *terms, margin)?;
            let [_, g2, _] = regions(&profile)?;
            let region = g2.member(point.mu, point.lambda, cli.tol)?.state;
            Ok(json!({ "verdict": verdict, "gamma2_region": region }))
        }
        OracleCommand::T3 {
            spec,
            mu,
            lambda,
            window,
        } => {
            let profile = load(spec)?;
            let windows = parse_windows(window)?;
            let adjoint = windows
                .iter()
                .map(|&w| joint_adjoint_kernel_smin(&profile, *mu, *lambda, w))
                .collect::<isopair_core::Result<Vec<f64>>>()?;
            let forward = gamma1_empty_check(
                &profile,
                &[(*mu, *lambda)],
                &windows,
                isopair_core::oracle::TAU_OUT,
            )?;
            Ok(json!({
                "mu": [mu.re, mu.im],
                "lambda": [lambda.re, lambda.im],
                "windows": windows,
                "adjoint_kernel_smin": adjoint,
                "joint_kernel_smin": forward.samples[0].smin_by_window,
            }))
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    match &cli.command {
        Command::Validate { spec } => print_json(&structure_json(&load(spec)?.validate()?)),
        Command::Report { spec, samples } => print_json(&report(cli, &load(spec)?, *samples)?),
        Command::Params { spec } => print_json(&compute_params(&load(spec)?)?),
        Command::Member { spec, mu, lambda } => {
            let [t, g2, g3] = regions(&load(spec)?)?;
            let at = |r: &RegionSpec| r.member_complex(*mu, *lambda, cli.tol).map(|m| m.state);
            print_json(&json!({
                "mu_abs": mu.norm(),
                "lambda_abs": lambda.norm(),
                "taylor": at(&t)?,
                "gamma2": at(&g2)?,
                "gamma3": at(&g3)?,
                "tolerance": cli.tol,
            }))
        }
        Command::Sample {
            spec,
            resolution,
            out,
        } => sample(cli, &load(spec)?, *resolution, out),
        Command::Raster {
            spec,
            width,
            height,
            out,
        } => raster(cli, &load(spec)?, *width, *height, out),
        Command::Fringe { spec, mu, weights } => print_json(&fringe(&load(spec)?, *mu, *weights)?),
        Command::Oracle(cmd) => print_json(&oracle(cli, cmd)?),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<serde_json::Error>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::EmptyDiagramWindow
            | Error::MonotonicityViolation { .. }
            | Error::TailMismatch { .. }
            | Error::DegenerateAllEqualSlopes
            | Error::InvalidTail(_)
            | Error::SimpleDiagram
            | Error::UnsupportedTranspose(_),
        ) => 2,
        Some(
            Error::ScanOverflow { .. }
            | Error::MuOutOfRange(_)
            | Error::ParameterRegime(_)
            | Error::DegenerateSpec
            | Error::EmptyWindow
            | Error::OutOfUnitInterval { .. }
            | Error::InvertedBand { .. },
        ) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
