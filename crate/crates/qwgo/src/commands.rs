//! Subcommand implementations.

use std::path::{Path, PathBuf};

use qwgo_core::baselines::{run_ga, run_sa, GaConfig, SaConfig};
use qwgo_core::optimizer::{RunConfig, WalkStartPolicy};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cli::{Flags, UsageError};
use crate::csvio;
use crate::problem::{resolve, ProblemSetup};
use crate::runner::{
    self, evaluation_curve, iteration_curve, run_many, Algorithm, AxisKind, CurveGroup,
    CurvePoint,
};
use crate::svg::{write_line_chart, Series};
use crate::validate;
use crate::DriverError;

const DEFAULT_SEED: u64 = 42;

/// Shared knobs; `--r0` is command-specific (single value or list) and is
/// applied by each command on top of this.
fn run_config_from_flags(flags: &Flags, setup: &ProblemSetup) -> Result<RunConfig, DriverError> {
    let domain = setup.problem.domain();
    let mut config = RunConfig::for_domain(&domain);
    config.tau = flags.f64_or("tau", config.tau)?;
    config.spread = flags.f64_or("z", config.spread)?;
    config.max_iterations = flags.usize_or("max-iter", config.max_iterations)?;
    config.success_tolerance = flags.f64_or("tolerance", config.success_tolerance)?;
    config.early_stop_on_success = flags.bool_or("early-stop", config.early_stop_on_success)?;
    if let Some(name) = flags.get("walk-start") {
        config.walk_start = WalkStartPolicy::from_name(name)
            .ok_or_else(|| UsageError::new(format!("unknown walk start policy `{name}`")))?;
    }
    Ok(config)
}

fn out_path(flags: &Flags, default: &str) -> PathBuf {
    PathBuf::from(flags.str_or("out", default))
}

pub fn cmd_optimize(flags: &Flags) -> Result<i32, DriverError> {
    let setup = resolve(flags)?;
    let mut config = run_config_from_flags(flags, &setup)?;
    config.rotation_threshold = flags.i32_or("r0", config.rotation_threshold)?;
    let algorithm = parse_algorithm(flags.str_or("algo", "bbw-qw"))?;
    let seed = flags.u64_or("seed", DEFAULT_SEED)?;
    let trace = runner::run_one(&setup.problem, &config, algorithm, seed)?;
    let path = out_path(flags, "trace.csv");
    csvio::write_trace(&path, &trace)?;
    println!(
        "{} on {}: {} iterations, {} evaluations, best f = {}{}",
        algorithm.name(),
        setup.label,
        trace.rows.len(),
        trace.summary.total_evaluations,
        trace.rows.last().map_or(trace.initial.f, |r| r.best_f),
        match trace.summary.first_success_evaluations {
            Some(e) => format!(", first success at {e} evaluations"),
            None => ", no success".to_string(),
        }
    );
    println!("trace written to {}", path.display());
    Ok(0)
}

fn parse_algorithm(name: &str) -> Result<Algorithm, UsageError> {
    Algorithm::from_name(name)
        .ok_or_else(|| UsageError::new(format!("unknown algorithm `{name}` (bbw | bbw-qw)")))
}

pub fn cmd_experiment(flags: &Flags) -> Result<i32, DriverError> {
    let setup = resolve(flags)?;
    let base_config = run_config_from_flags(flags, &setup)?;
    let runs = flags.usize_or("runs", 200)?;
    if runs == 0 {
        return Err(UsageError::new("flag `--runs` must be at least 1").into());
    }
    let seed = flags.u64_or("seed", DEFAULT_SEED)?;
    let jobs = flags.jobs()?;
    let r0_list = flags.i32_list_or("r0", &[2])?;
    let algorithms: Vec<Algorithm> = match flags.get("algo") {
        None => vec![Algorithm::Bbw, Algorithm::BbwQw],
        Some(name) => vec![parse_algorithm(name)?],
    };

    let mut groups = Vec::new();
    for &algorithm in &algorithms {
        for &r0 in &r0_list {
            let mut config = base_config;
            config.rotation_threshold = r0;
            let outcomes = run_many(&setup.problem, &config, algorithm, runs, seed, jobs)?;
            groups.push(CurveGroup {
                algorithm: algorithm.name().to_string(),
                objective: setup.label.clone(),
                r0: Some(r0),
                axis: AxisKind::Iterations,
                runs,
                points: iteration_curve(&outcomes, config.max_iterations),
            });
            groups.push(CurveGroup {
                algorithm: algorithm.name().to_string(),
                objective: setup.label.clone(),
                r0: Some(r0),
                axis: AxisKind::Evaluations,
                runs,
                points: evaluation_curve(&outcomes, None),
            });
        }
    }
    let path = out_path(flags, "curve.csv");
    csvio::write_curves(&path, &groups)?;
    println!("{} curve groups over {} runs each written to {}", groups.len(), runs, path.display());
    if let Some(svg) = flags.get("svg") {
        render_curve_svg(Path::new(svg), &groups, AxisKind::Evaluations)?;
        println!("plot written to {svg}");
    }
    Ok(0)
}

pub fn cmd_pdf(flags: &Flags) -> Result<i32, DriverError> {
    let setup = resolve(flags)?;
    let mut config = run_config_from_flags(flags, &setup)?;
    config.record_distributions = true;
    let runs = flags.usize_or("runs", 20)?;
    if runs == 0 {
        return Err(UsageError::new("flag `--runs` must be at least 1").into());
    }
    let seed = flags.u64_or("seed", DEFAULT_SEED)?;
    let jobs = flags.jobs()?;
    let algorithm = parse_algorithm(flags.str_or("algo", "bbw-qw"))?;
    let outcomes = run_many(&setup.problem, &config, algorithm, runs, seed, jobs)?;
    let mean = runner::average_distributions(&outcomes);
    let path = out_path(flags, "pdf.csv");
    csvio::write_pdf(&path, &setup.problem.domain(), &mean)?;
    println!(
        "averaged pre-measurement distributions for {} ({} runs, {} iterations) written to {}",
        algorithm.name(),
        runs,
        mean.len(),
        path.display()
    );
    if let Some(svg) = flags.get("svg") {
        render_pdf_svg(Path::new(svg), &setup, &mean)?;
        println!("plot written to {svg}");
    }
    Ok(0)
}

pub fn cmd_validate(flags: &Flags) -> Result<i32, DriverError> {
    let filter = flags.get("check");
    if let Some(f) = filter {
        if !validate::FAMILIES.contains(&f) {
            return Err(UsageError::new(format!(
                "unknown check family `{f}` (expected one of {})",
                validate::FAMILIES.join(", ")
            ))
            .into());
        }
    }
    let states = flags.usize_or("n", 256)?;
    let spread = flags.f64_or("z", 20.0)?;
    let checks = validate::run_checks(filter, states, spread)?;
    let mut all_pass = true;
    for check in &checks {
        all_pass &= check.pass;
        println!(
            "{} {:<34} max error {:>12.3e}  (tolerance {:.1e})",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.max_error,
            check.tolerance
        );
    }
    if all_pass {
        println!("all {} checks passed", checks.len());
        Ok(0)
    } else {
        Err(DriverError::Failure("validation checks failed".to_string()))
    }
}

pub fn cmd_baseline(flags: &Flags) -> Result<i32, DriverError> {
    let setup = resolve(flags)?;
    let Some(objective) = setup.objective else {
        return Err(UsageError::new(
            "baseline needs a named objective with a known optimum; tabulated objectives are not supported",
        )
        .into());
    };
    let method = flags
        .get("method")
        .ok_or_else(|| UsageError::new("baseline needs --method sa|ga"))?;
    let runs = flags.usize_or("runs", 200)?;
    if runs == 0 {
        return Err(UsageError::new("flag `--runs` must be at least 1").into());
    }
    let seed = flags.u64_or("seed", DEFAULT_SEED)?;
    let jobs = flags.jobs()?;
    let budget = flags.u64_or("budget", 10_000)?;
    let tolerance = flags.f64_or("tolerance", 1e-4)?;
    let domain = flags.domain_opt()?.unwrap_or_else(|| objective.default_domain());
    let (target_x, _) = objective.known_optimum();

    let mut groups = Vec::new();
    match method {
        "sa" => {
            for t0 in flags.f64_list_or("t0", &[100.0, 1000.0])? {
                let config = SaConfig {
                    initial_temperature: t0,
                    max_evaluations: budget,
                    ..SaConfig::default()
                };
                let first: Vec<Option<u64>> = collect_first_successes(runs, jobs, |i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                    run_sa(objective, domain, &config, &mut rng)
                        .map(|t| t.first_success(target_x, tolerance))
                })?;
                groups.push(baseline_group(format!("sa-t0-{t0}"), &setup, budget, runs, &first));
            }
        }
        "ga" => {
            for pop in flags.i32_list_or("pop", &[5, 25, 50])? {
                if pop < 2 {
                    return Err(UsageError::new("GA population must be at least 2").into());
                }
                let config = GaConfig {
                    population: pop as usize,
                    max_evaluations: budget,
                    ..GaConfig::default()
                };
                let first: Vec<Option<u64>> = collect_first_successes(runs, jobs, |i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                    run_ga(objective, domain, &config, &mut rng)
                        .map(|t| t.first_success(target_x, tolerance))
                })?;
                groups.push(baseline_group(format!("ga-pop-{pop}"), &setup, budget, runs, &first));
            }
        }
        other => {
            return Err(UsageError::new(format!("unknown baseline method `{other}` (sa | ga)")).into())
        }
    }
    let path = out_path(flags, "curve.csv");
    csvio::write_curves(&path, &groups)?;
    println!("{} baseline curve groups written to {}", groups.len(), path.display());
    if let Some(svg) = flags.get("svg") {
        render_curve_svg(Path::new(svg), &groups, AxisKind::Evaluations)?;
        println!("plot written to {svg}");
    }
    Ok(0)
}

fn collect_first_successes<F>(
    runs: usize,
    jobs: usize,
    work: F,
) -> Result<Vec<Option<u64>>, DriverError>
where
    F: Fn(usize) -> qwgo_core::Result<Option<u64>> + Sync,
{
    let results = runner::parallel_map(runs, jobs, work);
    let mut out = Vec::with_capacity(runs);
    for r in results {
        out.push(r?);
    }
    Ok(out)
}

fn baseline_group(
    algorithm: String,
    setup: &ProblemSetup,
    budget: u64,
    runs: usize,
    first_successes: &[Option<u64>],
) -> CurveGroup {
    let points: Vec<CurvePoint> = (1..=budget)
        .map(|e| {
            let hits = first_successes.iter().filter(|f| f.is_some_and(|fe| fe <= e)).count();
            let p = hits as f64 / runs as f64;
            CurvePoint { axis_value: e, success_prob: p, stderr: (p * (1.0 - p) / runs as f64).sqrt() }
        })
        .collect();
    CurveGroup {
        algorithm,
        objective: setup.label.clone(),
        r0: None,
        axis: AxisKind::Evaluations,
        runs,
        points,
    }
}

fn render_curve_svg(path: &Path, groups: &[CurveGroup], axis: AxisKind) -> Result<(), DriverError> {
    let series: Vec<Series> = groups
        .iter()
        .filter(|g| g.axis == axis)
        .map(|g| Series {
            label: match g.r0 {
                Some(r0) => format!("{} (R0={})", g.algorithm, r0),
                None => g.algorithm.clone(),
            },
            points: g
                .points
                .iter()
                .map(|p| (p.axis_value as f64, p.success_prob))
                .collect(),
        })
        .collect();
    write_line_chart(path, "probability of success", axis.as_str(), "success probability", &series)?;
    Ok(())
}

fn render_pdf_svg(path: &Path, setup: &ProblemSetup, mean: &[Vec<f64>]) -> Result<(), DriverError> {
    let domain = setup.problem.domain();
    let picks: Vec<usize> = [0usize, 4, 9, 19, 43]
        .into_iter()
        .filter(|&i| i < mean.len())
        .collect();
    let series: Vec<Series> = picks
        .into_iter()
        .map(|i| Series {
            label: format!("iteration {i}"),
            points: mean[i]
                .iter()
                .enumerate()
                .map(|(j, p)| (domain.coord(j), *p))
                .collect(),
        })
        .collect();
    write_line_chart(path, "averaged pre-measurement distribution", "x", "mean probability", &series)?;
    Ok(())
}
