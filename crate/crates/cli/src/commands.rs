//! Implementations of the five subcommands. Each returns the process exit
//! code: 0 success, 2 numerical/validation failure (usage problems surface
//! as `CliError::Usage` and exit 1 from main).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use flamefront_core::asymptotics::{
    front_alpha_one, front_alpha_zero, front_theta_near_one, front_theta_small, AsymptoticRegime,
};
use flamefront_core::{
    phase, reconstruct_profiles, solve_front_with, validate_front, FrontOptions, FrontSolution,
    ModelParams, ProfileTable, SeedOffset, WTrajectory, ALPHA_MAX, ALPHA_MIN,
};

use crate::args::{
    fill, load_config, parse_grid, require, CliError, CliResult, CompareArgs, PhaseArgs,
    ProfileArgs, SolveArgs, SweepArgs,
};
use crate::record::{sig, SweepRecord, CSV_HEADER};

const DEFAULT_SIGMA_TOL: f64 = 1e-10;
const DEFAULT_MAX_RESIDUAL: f64 = 1e-6;
const DEFAULT_POINTS: usize = 64;
const DEFAULT_ANGLE_TOL: f64 = 1e-8;
const MONOTONE_SLACK: f64 = 1e-8;

fn max_x_from_env() -> CliResult<f64> {
    match std::env::var("FLAMEFRONT_MAX_X") {
        Ok(raw) => raw
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| *v > 0.0)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "FLAMEFRONT_MAX_X: expected a positive number, got `{raw}`"
                ))
            }),
        Err(_) => Ok(1e6),
    }
}

fn writer(out: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    match out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(BufWriter::new(std::io::stdout()))),
    }
}

fn emit(w: &mut dyn Write, text: &str) -> CliResult<()> {
    w.write_all(text.as_bytes()).map_err(io_error)
}

// A closed downstream pipe (e.g. `flamefront ... | head`) is a normal way
// to stop reading; exit quietly instead of reporting a failure.
fn io_error(e: std::io::Error) -> CliError {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        std::process::exit(0);
    }
    CliError::Numerical(format!("write failed: {e}"))
}

/// Full solve + profile + residual pass for one tuple.
fn solve_tuple(
    theta: f64,
    lambda: f64,
    alpha: f64,
    tol: f64,
    max_x: f64,
    points: usize,
    xi_min: Option<f64>,
) -> flamefront_core::Result<(SweepRecord, FrontSolution, ProfileTable)> {
    let start = Instant::now();
    let params = ModelParams::new(lambda, alpha)?;
    let opts = FrontOptions {
        sigma_tol: tol,
        max_x,
    };
    let front = solve_front_with(&params, theta, &opts)?;
    let profile = reconstruct_profiles(&front, xi_min.unwrap_or(front.default_xi_min()), points)?;
    let report = validate_front(&front, &profile);
    let mut rec = SweepRecord {
        theta,
        lambda,
        alpha,
        sigma_star: front.sigma_star,
        c_star: front.c_star,
        r_star: front.r_star,
        a_coef: front.a_coef,
        res_ign: 0.0,
        res_flux: 0.0,
        res_ode: 0.0,
        res_c_identity: 0.0,
        res_theta_identity: 0.0,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    rec.set_residuals(&report);
    Ok((rec, front, profile))
}

pub fn cmd_solve(mut args: SolveArgs) -> CliResult<i32> {
    if let Some(path) = &args.config {
        let map = load_config(path)?;
        fill(&mut args.theta, &map, "theta")?;
        fill(&mut args.lambda, &map, "lambda")?;
        fill(&mut args.alpha, &map, "alpha")?;
        fill(&mut args.tol, &map, "tol")?;
        fill(&mut args.max_residual, &map, "max-residual")?;
        fill(&mut args.format, &map, "format")?;
        fill(&mut args.out, &map, "out")?;
    }
    let theta = require(args.theta, "theta")?;
    let lambda = require(args.lambda, "lambda")?;
    let alpha = require(args.alpha, "alpha")?;
    let tol = args.tol.unwrap_or(DEFAULT_SIGMA_TOL);
    let max_residual = args.max_residual.unwrap_or(DEFAULT_MAX_RESIDUAL);
    let format = args.format.as_deref().unwrap_or("csv");
    let max_x = max_x_from_env()?;

    let (rec, _, _) = solve_tuple(theta, lambda, alpha, tol, max_x, DEFAULT_POINTS, None)?;

    let mut out = writer(&args.out)?;
    match format {
        "csv" => {
            emit(&mut *out, &format!("{CSV_HEADER}\n{}\n", rec.csv_row()))?;
        }
        "json" => {
            let json = serde_json::to_string_pretty(&rec)
                .map_err(|e| CliError::Numerical(format!("serialization failed: {e}")))?;
            emit(&mut *out, &format!("{json}\n"))?;
        }
        other => {
            return Err(CliError::Usage(format!(
                "--format must be csv or json, got `{other}`"
            )))
        }
    }
    Ok(if rec.max_residual() < max_residual {
        0
    } else {
        2
    })
}

pub fn cmd_sweep(mut args: SweepArgs) -> CliResult<i32> {
    if let Some(path) = &args.config {
        let map = load_config(path)?;
        fill(&mut args.theta_grid, &map, "theta-grid")?;
        fill(&mut args.lambda_grid, &map, "lambda-grid")?;
        fill(&mut args.alpha_grid, &map, "alpha-grid")?;
        fill(&mut args.out, &map, "out")?;
        fill(&mut args.jobs, &map, "jobs")?;
        fill(&mut args.tol, &map, "tol")?;
    }
    let thetas = parse_grid(args.theta_grid.as_deref().unwrap_or("0.25,0.5,0.75"))
        .map_err(|m| CliError::Usage(format!("--theta-grid: {m}")))?;
    let lambdas = parse_grid(args.lambda_grid.as_deref().unwrap_or("0.2,1,5"))
        .map_err(|m| CliError::Usage(format!("--lambda-grid: {m}")))?;
    let alphas = parse_grid(args.alpha_grid.as_deref().unwrap_or("0.25,0.5,0.75"))
        .map_err(|m| CliError::Usage(format!("--alpha-grid: {m}")))?;
    let out_path = args
        .out
        .ok_or_else(|| CliError::Usage("missing required flag --out".to_string()))?;
    let tol = args.tol.unwrap_or(DEFAULT_SIGMA_TOL);
    let max_x = max_x_from_env()?;

    let mut tuples = Vec::new();
    for &theta in &thetas {
        for &lambda in &lambdas {
            for &alpha in &alphas {
                tuples.push((theta, lambda, alpha));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    // Tuples run in parallel; `collect` restores input order for output.
    let results: Vec<(SweepRecord, Option<String>)> = pool.install(|| {
        use rayon::prelude::*;
        tuples
            .par_iter()
            .map(|&(theta, lambda, alpha)| {
                let start = Instant::now();
                match solve_tuple(theta, lambda, alpha, tol, max_x, DEFAULT_POINTS, None) {
                    Ok((rec, _, _)) => (rec, None),
                    Err(err) => (
                        SweepRecord::failed(
                            theta,
                            lambda,
                            alpha,
                            start.elapsed().as_secs_f64() * 1e3,
                        ),
                        Some(err.to_string()),
                    ),
                }
            })
            .collect()
    });

    let mut out = writer(&Some(out_path))?;
    emit(&mut *out, &format!("{CSV_HEADER}\n"))?;
    for (rec, _) in &results {
        emit(&mut *out, &format!("{}\n", rec.csv_row()))?;
    }

    // Summary block: c* should fall along every coordinate line.
    let (nt, nl, na) = (thetas.len(), lambdas.len(), alphas.len());
    let c_at = |i: usize, j: usize, k: usize| results[(i * nl + j) * na + k].0.c_star;
    let mut viol = [0usize; 3];
    let rising =
        |a: f64, b: f64| a.is_finite() && b.is_finite() && b > a + MONOTONE_SLACK * a.abs();
    for j in 0..nl {
        for k in 0..na {
            for i in 1..nt {
                if rising(c_at(i - 1, j, k), c_at(i, j, k)) {
                    viol[0] += 1;
                }
            }
        }
    }
    for i in 0..nt {
        for k in 0..na {
            for j in 1..nl {
                if rising(c_at(i, j - 1, k), c_at(i, j, k)) {
                    viol[1] += 1;
                }
            }
        }
    }
    for i in 0..nt {
        for j in 0..nl {
            for k in 1..na {
                if rising(c_at(i, j, k - 1), c_at(i, j, k)) {
                    viol[2] += 1;
                }
            }
        }
    }
    emit(
        &mut *out,
        &format!(
            "# c_star monotonicity violations along theta: {}\n",
            viol[0]
        ),
    )?;
    emit(
        &mut *out,
        &format!(
            "# c_star monotonicity violations along lambda: {}\n",
            viol[1]
        ),
    )?;
    emit(
        &mut *out,
        &format!(
            "# c_star monotonicity violations along alpha: {}\n",
            viol[2]
        ),
    )?;

    let mut failures = 0;
    for ((rec, err), _) in results.iter().zip(&tuples) {
        if let Some(msg) = err {
            failures += 1;
            emit(
                &mut *out,
                &format!(
                    "# tuple (theta={}, lambda={}, alpha={}) failed: {msg}\n",
                    rec.theta, rec.lambda, rec.alpha
                ),
            )?;
        }
    }
    out.flush().map_err(io_error)?;
    Ok(if failures > 0 { 2 } else { 0 })
}

pub fn cmd_profile(mut args: ProfileArgs) -> CliResult<i32> {
    if let Some(path) = &args.config {
        let map = load_config(path)?;
        fill(&mut args.theta, &map, "theta")?;
        fill(&mut args.lambda, &map, "lambda")?;
        fill(&mut args.alpha, &map, "alpha")?;
        fill(&mut args.xi_min, &map, "xi-min")?;
        fill(&mut args.points, &map, "points")?;
        fill(&mut args.tol, &map, "tol")?;
        fill(&mut args.max_residual, &map, "max-residual")?;
        fill(&mut args.out, &map, "out")?;
    }
    let theta = require(args.theta, "theta")?;
    let lambda = require(args.lambda, "lambda")?;
    let alpha = require(args.alpha, "alpha")?;
    let tol = args.tol.unwrap_or(DEFAULT_SIGMA_TOL);
    let max_residual = args.max_residual.unwrap_or(DEFAULT_MAX_RESIDUAL);
    let points = args.points.unwrap_or(DEFAULT_POINTS);
    let max_x = max_x_from_env()?;

    let (rec, _, profile) = solve_tuple(theta, lambda, alpha, tol, max_x, points, args.xi_min)?;

    let mut out = writer(&args.out)?;
    emit(&mut *out, &format!("# xi_ign = {}\n", sig(profile.xi_ign)))?;
    emit(&mut *out, &format!("# xi_tr = {}\n", sig(profile.xi_tr)))?;
    emit(&mut *out, "xi,u,v,uprime,vprime\n")?;
    for row in &profile.rows {
        emit(
            &mut *out,
            &format!(
                "{},{},{},{},{}\n",
                sig(row.xi),
                sig(row.u),
                sig(row.v),
                sig(row.uprime),
                sig(row.vprime)
            ),
        )?;
    }
    out.flush().map_err(io_error)?;
    Ok(if rec.max_residual() < max_residual {
        0
    } else {
        2
    })
}

struct CompareRow {
    regime: &'static str,
    quantity: &'static str,
    numeric: f64,
    asymptotic: f64,
    band: f64,
}

pub fn cmd_compare(mut args: CompareArgs) -> CliResult<i32> {
    if let Some(path) = &args.config {
        let map = load_config(path)?;
        fill(&mut args.theta, &map, "theta")?;
        fill(&mut args.lambda, &map, "lambda")?;
        fill(&mut args.alpha, &map, "alpha")?;
        fill(&mut args.regimes, &map, "regimes")?;
        fill(&mut args.tol, &map, "tol")?;
        fill(&mut args.out, &map, "out")?;
    }
    let theta = require(args.theta, "theta")?;
    let lambda = require(args.lambda, "lambda")?;
    let tol = args.tol.unwrap_or(DEFAULT_SIGMA_TOL);
    let max_x = max_x_from_env()?;

    let regimes: Vec<AsymptoticRegime> = match args.regimes.as_deref() {
        Some(list) => list
            .split(',')
            .map(str::trim)
            .map(|name| {
                AsymptoticRegime::parse(name)
                    .ok_or_else(|| CliError::Usage(format!("unknown regime `{name}`")))
            })
            .collect::<CliResult<_>>()?,
        None => {
            // Every regime valid at this theta.
            let mut set = vec![AsymptoticRegime::AlphaZero, AsymptoticRegime::AlphaOne];
            if theta >= 0.9 {
                set.insert(0, AsymptoticRegime::ThetaNearOne);
            }
            if theta <= 0.01 {
                set.insert(0, AsymptoticRegime::ThetaSmall);
            }
            set
        }
    };

    let opts = FrontOptions {
        sigma_tol: tol,
        max_x,
    };
    let solve_at = |a: f64| -> CliResult<FrontSolution> {
        let params = ModelParams::new(lambda, a)?;
        Ok(solve_front_with(&params, theta, &opts)?)
    };

    let mut rows: Vec<CompareRow> = Vec::new();
    for regime in &regimes {
        match regime {
            AsymptoticRegime::ThetaNearOne => {
                if theta < 0.9 {
                    return Err(CliError::Usage(format!(
                        "regime theta-near-one expects theta >= 0.9, got {theta}"
                    )));
                }
                let alpha = require(args.alpha, "alpha")?;
                let front = solve_at(alpha)?;
                let (c_as, r_as) = front_theta_near_one(theta, lambda, alpha)?;
                rows.push(CompareRow {
                    regime: "theta-near-one",
                    quantity: "c_star",
                    numeric: front.c_star,
                    asymptotic: c_as,
                    band: 0.05,
                });
                rows.push(CompareRow {
                    regime: "theta-near-one",
                    quantity: "r_star",
                    numeric: front.r_star,
                    asymptotic: r_as,
                    band: 0.05,
                });
            }
            AsymptoticRegime::ThetaSmall => {
                if theta > 0.01 {
                    return Err(CliError::Usage(format!(
                        "regime theta-small expects theta <= 0.01, got {theta}"
                    )));
                }
                let alpha = require(args.alpha, "alpha")?;
                let front = solve_at(alpha)?;
                let (c_as, r_as) = front_theta_small(theta, alpha);
                rows.push(CompareRow {
                    regime: "theta-small",
                    quantity: "c_star",
                    numeric: front.c_star,
                    asymptotic: c_as,
                    band: 0.10,
                });
                rows.push(CompareRow {
                    regime: "theta-small",
                    quantity: "r_star",
                    numeric: front.r_star,
                    asymptotic: r_as,
                    band: 0.10,
                });
            }
            AsymptoticRegime::AlphaZero => {
                let front = solve_at(ALPHA_MIN)?;
                let (c_as, _) = front_alpha_zero(theta)?;
                rows.push(CompareRow {
                    regime: "alpha-zero",
                    quantity: "c_star",
                    numeric: front.c_star,
                    asymptotic: c_as,
                    band: 0.03,
                });
            }
            AsymptoticRegime::AlphaOne => {
                let front = solve_at(ALPHA_MAX)?;
                let (c_as, _) = front_alpha_one(theta, lambda);
                rows.push(CompareRow {
                    regime: "alpha-one",
                    quantity: "c_star",
                    numeric: front.c_star,
                    asymptotic: c_as,
                    band: 0.05,
                });
            }
            other => {
                return Err(CliError::Usage(format!(
                    "regime `{}` has no solver counterpart to compare; choose from \
                     theta-near-one, theta-small, alpha-zero, alpha-one",
                    other.name()
                )));
            }
        }
    }

    let mut failures = 0;
    let mut out = writer(&args.out)?;
    emit(
        &mut *out,
        "regime,quantity,numeric,asymptotic,rel_err,band,status\n",
    )?;
    for row in &rows {
        let rel = (row.numeric - row.asymptotic).abs() / row.asymptotic.abs();
        let ok = rel <= row.band;
        if !ok {
            failures += 1;
        }
        emit(
            &mut *out,
            &format!(
                "{},{},{},{},{},{},{}\n",
                row.regime,
                row.quantity,
                sig(row.numeric),
                sig(row.asymptotic),
                sig(rel),
                sig(row.band),
                if ok { "pass" } else { "fail" }
            ),
        )?;
    }
    out.flush().map_err(io_error)?;
    Ok(if failures > 0 { 2 } else { 0 })
}

pub fn cmd_phase(mut args: PhaseArgs) -> CliResult<i32> {
    if let Some(path) = &args.config {
        let map = load_config(path)?;
        fill(&mut args.lambda, &map, "lambda")?;
        fill(&mut args.alpha, &map, "alpha")?;
        fill(&mut args.reach, &map, "reach")?;
        fill(&mut args.seed_offset, &map, "seed-offset")?;
        fill(&mut args.angle_tol, &map, "angle-tol")?;
        fill(&mut args.out, &map, "out")?;
    }
    let lambda = require(args.lambda, "lambda")?;
    let alpha = require(args.alpha, "alpha")?;
    let reach = require(args.reach, "reach")?;
    if reach == 0.0 || !reach.is_finite() {
        return Err(CliError::Usage(
            "--reach must be a nonzero depth".to_string(),
        ));
    }
    let angle_tol = args.angle_tol.unwrap_or(DEFAULT_ANGLE_TOL);
    let seed = match args.seed_offset.as_deref() {
        None => SeedOffset::Explicit(1e-4),
        Some("auto") => SeedOffset::Auto,
        Some(raw) => {
            let eps = raw.parse::<f64>().map_err(|_| {
                CliError::Usage(format!(
                    "--seed-offset: expected `auto` or a number, got `{raw}`"
                ))
            })?;
            SeedOffset::Explicit(eps)
        }
    };

    let params = ModelParams::new(lambda, alpha)?.with_seed_offset(seed)?;
    let mut traj = WTrajectory::new(params)?;
    traj.extend(-reach.abs())?;
    let trace = phase::to_polar(&traj)?;
    let report = phase::angle_monotonicity_report(&trace);

    let mut out = writer(&args.out)?;
    emit(
        &mut *out,
        &format!(
            "# max_positive_angle_increment = {}\n",
            sig(report.max_positive_increment)
        ),
    )?;
    emit(
        &mut *out,
        &format!("# positive_increments = {}\n", report.positive_count),
    )?;
    if let Some((t0, t1)) = report.location {
        emit(
            &mut *out,
            &format!("# worst_increment_between = {},{}\n", sig(t0), sig(t1)),
        )?;
    }
    emit(&mut *out, "t,q,p,r,theta_angle\n")?;
    for row in &trace.rows {
        emit(
            &mut *out,
            &format!(
                "{},{},{},{},{}\n",
                sig(row.t),
                sig(row.q),
                sig(row.p),
                sig(row.r),
                sig(row.theta_angle)
            ),
        )?;
    }
    out.flush().map_err(io_error)?;
    Ok(if report.max_positive_increment > angle_tol {
        2
    } else {
        0
    })
}
