//! Seeded multi-run execution with a bounded worker pool and deterministic,
//! run-index-ordered aggregation, so `--jobs` never changes output bytes.

use std::sync::atomic::{AtomicUsize, Ordering};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qwgo_core::optimizer::{run_bbw, run_bbw_qw, Problem, RunConfig, RunTrace};
use qwgo_core::Result as CoreResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Bbw,
    BbwQw,
}

impl Algorithm {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "bbw" => Some(Algorithm::Bbw),
            "bbw-qw" => Some(Algorithm::BbwQw),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Bbw => "bbw",
            Algorithm::BbwQw => "bbw-qw",
        }
    }
}

pub fn run_one(
    problem: &Problem,
    config: &RunConfig,
    algorithm: Algorithm,
    seed: u64,
) -> CoreResult<RunTrace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match algorithm {
        Algorithm::Bbw => run_bbw(problem, config, &mut rng),
        Algorithm::BbwQw => run_bbw_qw(problem, config, &mut rng),
    }
}

/// Fan `count` independent work items over `jobs` threads; results come back
/// in item order.
pub fn parallel_map<T, F>(count: usize, jobs: usize, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let jobs = jobs.max(1).min(count.max(1));
    if jobs <= 1 {
        return (0..count).map(work).collect();
    }
    let next = AtomicUsize::new(0);
    let mut tagged: Vec<(usize, T)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let index = next.fetch_add(1, Ordering::Relaxed);
                        if index >= count {
                            break;
                        }
                        local.push((index, work(index)));
                    }
                    local
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    tagged.sort_by_key(|(index, _)| *index);
    tagged.into_iter().map(|(_, value)| value).collect()
}

/// Summary of one run as the curve aggregation needs it.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub first_success_iteration: Option<usize>,
    pub first_success_evaluations: Option<u64>,
    pub total_evaluations: u64,
    pub distributions: Option<Vec<Vec<f64>>>,
}

/// `runs` seeded runs; run `i` uses `base_seed + i`.
pub fn run_many(
    problem: &Problem,
    config: &RunConfig,
    algorithm: Algorithm,
    runs: usize,
    base_seed: u64,
    jobs: usize,
) -> CoreResult<Vec<RunOutcome>> {
    let results = parallel_map(runs, jobs, |i| {
        run_one(problem, config, algorithm, base_seed.wrapping_add(i as u64)).map(|trace| RunOutcome {
            first_success_iteration: trace.summary.first_success_iteration,
            first_success_evaluations: trace.summary.first_success_evaluations,
            total_evaluations: trace.summary.total_evaluations,
            distributions: trace.distributions,
        })
    });
    results.into_iter().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    Iterations,
    Evaluations,
}

impl AxisKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AxisKind::Iterations => "iterations",
            AxisKind::Evaluations => "evaluations",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub axis_value: u64,
    pub success_prob: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone)]
pub struct CurveGroup {
    pub algorithm: String,
    pub objective: String,
    /// Rotation threshold for quantum curves; baselines carry none.
    pub r0: Option<i32>,
    pub axis: AxisKind,
    pub runs: usize,
    pub points: Vec<CurvePoint>,
}

fn binomial_point(hits: usize, runs: usize, axis_value: u64) -> CurvePoint {
    let p = hits as f64 / runs as f64;
    CurvePoint { axis_value, success_prob: p, stderr: (p * (1.0 - p) / runs as f64).sqrt() }
}

/// Fraction of runs whose first success happened by each iteration index.
pub fn iteration_curve(outcomes: &[RunOutcome], max_iterations: usize) -> Vec<CurvePoint> {
    (0..max_iterations as u64)
        .map(|i| {
            let hits = outcomes
                .iter()
                .filter(|o| o.first_success_iteration.is_some_and(|fi| fi as u64 <= i))
                .count();
            binomial_point(hits, outcomes.len(), i)
        })
        .collect()
}

/// Fraction of runs whose first success used at most `e` evaluations, for
/// every integer budget up to the largest run total.
pub fn evaluation_curve(outcomes: &[RunOutcome], budget: Option<u64>) -> Vec<CurvePoint> {
    let budget = budget
        .unwrap_or_else(|| outcomes.iter().map(|o| o.total_evaluations).max().unwrap_or(0));
    (1..=budget)
        .map(|e| {
            let hits = outcomes
                .iter()
                .filter(|o| o.first_success_evaluations.is_some_and(|fe| fe <= e))
                .count();
            binomial_point(hits, outcomes.len(), e)
        })
        .collect()
}

/// Success fraction at a single evaluation budget.
pub fn success_by_evaluations(outcomes: &[RunOutcome], budget: u64) -> f64 {
    let hits = outcomes
        .iter()
        .filter(|o| o.first_success_evaluations.is_some_and(|fe| fe <= budget))
        .count();
    hits as f64 / outcomes.len() as f64
}

/// Success fraction within the first `iterations` scheduled iterations.
pub fn success_by_iterations(outcomes: &[RunOutcome], iterations: usize) -> f64 {
    let hits = outcomes
        .iter()
        .filter(|o| o.first_success_iteration.is_some_and(|fi| fi < iterations))
        .count();
    hits as f64 / outcomes.len() as f64
}

/// Per-iteration mean of the recorded pre-measurement distributions.
pub fn average_distributions(outcomes: &[RunOutcome]) -> Vec<Vec<f64>> {
    let runs = outcomes.len();
    assert!(runs > 0, "need at least one run");
    let first = outcomes[0].distributions.as_ref().expect("distributions recorded");
    let iterations = first.len();
    let states = first.first().map_or(0, Vec::len);
    let mut mean = vec![vec![0.0f64; states]; iterations];
    for outcome in outcomes {
        let dists = outcome.distributions.as_ref().expect("distributions recorded");
        for (slot, dist) in mean.iter_mut().zip(dists) {
            for (m, p) in slot.iter_mut().zip(dist) {
                *m += p;
            }
        }
    }
    for slot in &mut mean {
        for m in slot.iter_mut() {
            *m /= runs as f64;
        }
    }
    mean
}

/// Shannon entropy (nats) of a probability vector.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>()
}
