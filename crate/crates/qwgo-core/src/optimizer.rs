//! The hybrid walk/Grover minimization loop and the static-schedule baseline.
//!
//! Both algorithms share one engine. Every iteration takes the rotation count
//! from the fixed 44-entry schedule; the hybrid replaces iterations whose
//! count does not exceed the rotation threshold `R0` with a single quantum
//! walk step from a policy-selected basis state. The threshold objective
//! value only ever improves on a strictly better sample.

use alloc::vec::Vec;

use rand::Rng;

use crate::ctqw::{WalkOperator, WalkParams};
use crate::error::{Error, Result};
use crate::grover::{grover_rotations, ThresholdOracle};
use crate::objectives::{grid_argmin, grid_values, Objective};
use crate::statevector::{GridDomain, QuantumState};

/// Static per-iteration Grover rotation counts.
pub const ROTATION_SCHEDULE: [u32; 44] = [
    0, 0, 0, 0, 1, 1, 0, 1, 1, 2, 1, 2, 3, 1, 4, 5, 1, 6, 2, 7, 9, 11, 13, 16, 5, 20, 24, 28, 34,
    2, 41, 49, 4, 60, 72, 9, 88, 105, 125, 3, 149, 22, 183, 219,
];

/// Scheduled rotations for an iteration; indices past the end repeat the
/// last entry.
pub fn scheduled_rotations(iteration: usize) -> u32 {
    ROTATION_SCHEDULE[iteration.min(ROTATION_SCHEDULE.len() - 1)]
}

/// What one iteration did to the register before measuring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Walk,
    Grover,
    Uniform,
}

impl StepKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StepKind::Walk => "walk",
            StepKind::Grover => "grover",
            StepKind::Uniform => "uniform",
        }
    }
}

/// Where a walk step places its unit amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkStartPolicy {
    /// Incumbent best sample; the very first walk starts at a random state.
    CurrentBest,
    Random,
    Center,
}

impl WalkStartPolicy {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "current-best" => Some(WalkStartPolicy::CurrentBest),
            "random" => Some(WalkStartPolicy::Random),
            "center" => Some(WalkStartPolicy::Center),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WalkStartPolicy::CurrentBest => "current-best",
            WalkStartPolicy::Random => "random",
            WalkStartPolicy::Center => "center",
        }
    }
}

/// Algorithm knobs for one run. `rotation_threshold = -1` disables walks
/// entirely, including the initial one, which makes the hybrid coincide with
/// the plain baseline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub rotation_threshold: i32,
    /// Walk spread `z = b tau / delta^2`.
    pub spread: f64,
    /// Walk time step controlling the objective damping `e^{-2 f tau}`.
    pub tau: f64,
    pub max_iterations: usize,
    pub success_tolerance: f64,
    pub walk_start: WalkStartPolicy,
    pub early_stop_on_success: bool,
    /// Keep the pre-measurement distribution of every iteration in the trace.
    pub record_distributions: bool,
}

impl RunConfig {
    /// Defaults: `R0 = 2`, `z = N/2`, `tau = 0.5`, the full schedule, the
    /// distance tolerance `1e-4`, and current-best walk starts.
    ///
    /// `z = N/2` lets a center-started walk span the whole grid without
    /// gross overshoot. `tau = 0.5` is strong enough damping that one walk
    /// step reduces both the mean and the variance of the sampled objective
    /// on all the bundled benchmarks; a weaker `tau = 0.1` already fails the
    /// variance reduction on the Ackley landscape.
    pub fn for_domain(domain: &GridDomain) -> Self {
        RunConfig {
            rotation_threshold: 2,
            spread: domain.len() as f64 / 2.0,
            tau: 0.5,
            max_iterations: ROTATION_SCHEDULE.len(),
            success_tolerance: 1e-4,
            walk_start: WalkStartPolicy::CurrentBest,
            early_stop_on_success: false,
            record_distributions: false,
        }
    }
}

/// A discretized minimization problem: grid, objective values on the grid,
/// and the grid coordinate that counts as the optimum for success judging.
#[derive(Debug, Clone)]
pub struct Problem {
    domain: GridDomain,
    values: Vec<f64>,
    target_x: f64,
}

impl Problem {
    pub fn from_objective(objective: Objective, domain: GridDomain) -> Result<Self> {
        let values = grid_values(objective, &domain)?;
        Self::from_values(domain, values)
    }

    pub fn from_values(domain: GridDomain, values: Vec<f64>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::DimensionMismatch { expected: domain.len(), found: values.len() });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("objective values must be finite"));
        }
        let (j, _) = grid_argmin(&values).ok_or(Error::Domain("objective grid is empty"))?;
        let target_x = domain.coord(j);
        Ok(Problem { domain, values, target_x })
    }

    pub fn domain(&self) -> GridDomain {
        self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Coordinate of the grid optimum used by the success test.
    pub fn target_x(&self) -> f64 {
        self.target_x
    }
}

/// The sample that seeds the threshold before the scheduled iterations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialSample {
    pub step: StepKind,
    pub index: usize,
    pub x: f64,
    pub f: f64,
    pub evaluations: u64,
}

/// One scheduled iteration of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    pub step: StepKind,
    pub rotations: u32,
    pub cumulative_evaluations: u64,
    pub sample_index: usize,
    pub sample_x: f64,
    pub sample_f: f64,
    pub threshold: f64,
    pub best_x: f64,
    pub best_f: f64,
    pub success: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSummary {
    pub total_evaluations: u64,
    pub first_success_iteration: Option<usize>,
    pub first_success_evaluations: Option<u64>,
}

/// Full record of one optimization run.
#[derive(Debug, Clone)]
pub struct RunTrace {
    pub initial: InitialSample,
    pub rows: Vec<IterationRecord>,
    /// Pre-measurement probability vectors, present when requested.
    pub distributions: Option<Vec<Vec<f64>>>,
    pub summary: RunSummary,
}

/// Declared cost model: one unit per measurement, per Grover rotation
/// (a coherent oracle evaluation), and per walk step (one coherent potential
/// evaluation while building the propagator); uniform initialization is free.
pub fn evaluation_cost(step: StepKind, rotations: u32) -> u64 {
    match step {
        StepKind::Walk => 2,
        StepKind::Grover => rotations as u64 + 1,
        StepKind::Uniform => 1,
    }
}

/// The hybrid walk-enhanced search.
pub fn run_bbw_qw<R: Rng + ?Sized>(problem: &Problem, config: &RunConfig, rng: &mut R) -> Result<RunTrace> {
    run_inner(problem, config, rng, config.rotation_threshold)
}

/// The static-schedule baseline: uniform initialization plus the scheduled
/// rotations every iteration, with the first threshold drawn uniformly.
pub fn run_bbw<R: Rng + ?Sized>(problem: &Problem, config: &RunConfig, rng: &mut R) -> Result<RunTrace> {
    run_inner(problem, config, rng, -1)
}

fn run_inner<R: Rng + ?Sized>(
    problem: &Problem,
    config: &RunConfig,
    rng: &mut R,
    rotation_threshold: i32,
) -> Result<RunTrace> {
    if config.rotation_threshold < -1 {
        return Err(Error::Domain("rotation threshold must be -1 (disabled) or nonnegative"));
    }
    if config.max_iterations == 0 {
        return Err(Error::Domain("a run needs at least one iteration"));
    }
    if !(config.success_tolerance > 0.0) {
        return Err(Error::Domain("success tolerance must be positive"));
    }
    let domain = problem.domain;
    let n = domain.len();
    let operator = if rotation_threshold >= 0 {
        let params = WalkParams::from_spread(config.spread, config.tau, domain.delta())?;
        Some(WalkOperator::build(domain, params, &problem.values)?)
    } else {
        None
    };

    let mut cumulative = 0u64;
    let initial = if let Some(op) = &operator {
        let start = match config.walk_start {
            WalkStartPolicy::Center => n / 2,
            _ => rng.gen_range(0..n),
        };
        let state = op.apply(&QuantumState::basis(domain, start)?)?;
        let index = state.measure(rng)?;
        cumulative += evaluation_cost(StepKind::Walk, 0);
        InitialSample {
            step: StepKind::Walk,
            index,
            x: domain.coord(index),
            f: problem.values[index],
            evaluations: cumulative,
        }
    } else {
        let index = QuantumState::uniform(domain).measure(rng)?;
        cumulative += evaluation_cost(StepKind::Uniform, 0);
        InitialSample {
            step: StepKind::Uniform,
            index,
            x: domain.coord(index),
            f: problem.values[index],
            evaluations: cumulative,
        }
    };

    let mut best_index = initial.index;
    let mut threshold = initial.f;
    let mut success = within_tolerance(initial.x, problem.target_x, config.success_tolerance);
    let mut first_success_iteration = success.then_some(0);
    let mut first_success_evaluations = success.then_some(cumulative);

    let mut rows = Vec::with_capacity(config.max_iterations);
    let mut distributions: Option<Vec<Vec<f64>>> =
        if config.record_distributions { Some(Vec::with_capacity(config.max_iterations)) } else { None };

    for iteration in 0..config.max_iterations {
        let scheduled = scheduled_rotations(iteration);
        let (step, rotations, state) = if i64::from(scheduled) <= i64::from(rotation_threshold) {
            let op = operator.as_ref().expect("walks enabled when threshold >= 0");
            let start = match config.walk_start {
                WalkStartPolicy::CurrentBest => best_index,
                WalkStartPolicy::Random => rng.gen_range(0..n),
                WalkStartPolicy::Center => n / 2,
            };
            let state = op.apply(&QuantumState::basis(domain, start)?)?;
            (StepKind::Walk, 0, state)
        } else if scheduled == 0 {
            (StepKind::Uniform, 0, QuantumState::uniform(domain))
        } else {
            let oracle = ThresholdOracle::new(&problem.values, threshold);
            let state = grover_rotations(QuantumState::uniform(domain), &oracle, scheduled)?;
            (StepKind::Grover, scheduled, state)
        };

        if let Some(record) = &mut distributions {
            record.push(state.probabilities()?);
        }
        let sample_index = state.measure(rng)?;
        cumulative += evaluation_cost(step, rotations);
        let sample_f = problem.values[sample_index];
        if sample_f < threshold {
            threshold = sample_f;
            best_index = sample_index;
        }
        if !success && within_tolerance(domain.coord(best_index), problem.target_x, config.success_tolerance)
        {
            success = true;
            first_success_iteration = Some(iteration);
            first_success_evaluations = Some(cumulative);
        }
        rows.push(IterationRecord {
            iteration,
            step,
            rotations,
            cumulative_evaluations: cumulative,
            sample_index,
            sample_x: domain.coord(sample_index),
            sample_f,
            threshold,
            best_x: domain.coord(best_index),
            best_f: problem.values[best_index],
            success,
        });
        if config.early_stop_on_success && success {
            break;
        }
    }

    Ok(RunTrace {
        initial,
        rows,
        distributions,
        summary: RunSummary {
            total_evaluations: cumulative,
            first_success_iteration,
            first_success_evaluations,
        },
    })
}

fn within_tolerance(x: f64, target: f64, tolerance: f64) -> bool {
    libm::fabs(x - target) < tolerance
}
