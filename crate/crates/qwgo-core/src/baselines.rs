//! Classical reference heuristics on the continuous domain: simulated
//! annealing with Metropolis acceptance and geometric cooling, and a
//! real-coded genetic algorithm with tournament selection, blend crossover,
//! Gaussian mutation, and single-individual elitism.
//!
//! Both emit a best-so-far trace indexed by evaluation count so their
//! efficiency is directly comparable to the quantum runs.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::objectives::Objective;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaConfig {
    pub initial_temperature: f64,
    /// Geometric cooling ratio applied once per proposal.
    pub cooling: f64,
    /// Gaussian proposal scale; `None` means `(x_upper - x_lower) / 20`.
    pub proposal_sigma: Option<f64>,
    pub max_evaluations: u64,
}

impl Default for SaConfig {
    fn default() -> Self {
        SaConfig {
            initial_temperature: 100.0,
            cooling: 0.95,
            proposal_sigma: None,
            max_evaluations: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaConfig {
    pub population: usize,
    pub tournament: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    /// Gaussian mutation scale; `None` means `(x_upper - x_lower) / 10`.
    pub mutation_sigma: Option<f64>,
    pub max_evaluations: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population: 25,
            tournament: 2,
            crossover_rate: 0.9,
            mutation_rate: 0.1,
            mutation_sigma: None,
            max_evaluations: 10_000,
        }
    }
}

/// Best-so-far record at a given cumulative evaluation count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BestSample {
    pub evaluations: u64,
    pub x: f64,
    pub f: f64,
}

/// One entry per functional evaluation, best-so-far semantics.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalTrace {
    pub samples: Vec<BestSample>,
}

impl EvalTrace {
    /// First evaluation count at which the best settled within `tolerance`
    /// of `target_x`.
    pub fn first_success(&self, target_x: f64, tolerance: f64) -> Option<u64> {
        self.samples
            .iter()
            .find(|s| libm::fabs(s.x - target_x) < tolerance)
            .map(|s| s.evaluations)
    }
}

fn clamp(x: f64, lo: f64, hi: f64) -> f64 {
    if x < lo {
        lo
    } else if x > hi {
        hi
    } else {
        x
    }
}

fn validate_domain(domain: (f64, f64)) -> Result<()> {
    if !domain.0.is_finite() || !domain.1.is_finite() || domain.1 <= domain.0 {
        return Err(Error::Domain("search interval needs finite bounds with hi > lo"));
    }
    Ok(())
}

/// Simulated annealing: Gaussian proposals clipped to the domain, acceptance
/// `min(1, e^{-df/T})`, temperature `T_k = T0 * cooling^k`.
pub fn run_sa<R: Rng + ?Sized>(
    objective: Objective,
    domain: (f64, f64),
    config: &SaConfig,
    rng: &mut R,
) -> Result<EvalTrace> {
    validate_domain(domain)?;
    if !(config.initial_temperature > 0.0) {
        return Err(Error::Domain("initial temperature must be positive"));
    }
    if !(config.cooling > 0.0 && config.cooling < 1.0) {
        return Err(Error::Domain("cooling ratio must lie in (0, 1)"));
    }
    if config.max_evaluations == 0 {
        return Err(Error::Domain("evaluation budget must be positive"));
    }
    let (lo, hi) = domain;
    let sigma = config.proposal_sigma.unwrap_or((hi - lo) / 20.0);
    if !(sigma > 0.0) {
        return Err(Error::Domain("proposal scale must be positive"));
    }
    let proposal = Normal::new(0.0, sigma).map_err(|_| Error::Domain("bad proposal scale"))?;

    let mut x = lo + (hi - lo) * rng.gen::<f64>();
    let mut fx = objective.evaluate(x)?;
    let mut best = BestSample { evaluations: 1, x, f: fx };
    let mut samples = Vec::with_capacity(config.max_evaluations as usize);
    samples.push(best);

    let mut temperature = config.initial_temperature;
    for evals in 2..=config.max_evaluations {
        let candidate = clamp(x + proposal.sample(rng), lo, hi);
        let fc = objective.evaluate(candidate)?;
        let df = fc - fx;
        let accept = df <= 0.0 || rng.gen::<f64>() < libm::exp(-df / temperature);
        if accept {
            x = candidate;
            fx = fc;
        }
        if fc < best.f {
            best = BestSample { evaluations: evals, x: candidate, f: fc };
        }
        samples.push(BestSample { evaluations: evals, ..best });
        temperature *= config.cooling;
    }
    Ok(EvalTrace { samples })
}

/// Generational real-coded GA with one elite carried over unevaluated.
pub fn run_ga<R: Rng + ?Sized>(
    objective: Objective,
    domain: (f64, f64),
    config: &GaConfig,
    rng: &mut R,
) -> Result<EvalTrace> {
    validate_domain(domain)?;
    if config.population < 2 {
        return Err(Error::Domain("population must hold at least two individuals"));
    }
    if config.tournament == 0 {
        return Err(Error::Domain("tournament size must be positive"));
    }
    if !(0.0..=1.0).contains(&config.crossover_rate) || !(0.0..=1.0).contains(&config.mutation_rate) {
        return Err(Error::Domain("rates must lie in [0, 1]"));
    }
    if config.max_evaluations == 0 {
        return Err(Error::Domain("evaluation budget must be positive"));
    }
    let (lo, hi) = domain;
    let sigma = config.mutation_sigma.unwrap_or((hi - lo) / 10.0);
    if !(sigma > 0.0) {
        return Err(Error::Domain("mutation scale must be positive"));
    }
    let mutation = Normal::new(0.0, sigma).map_err(|_| Error::Domain("bad mutation scale"))?;

    let mut samples = Vec::with_capacity(config.max_evaluations as usize);
    let mut evals = 0u64;
    let mut best: Option<BestSample> = None;
    let mut population: Vec<(f64, f64)> = Vec::with_capacity(config.population);

    let evaluate = |x: f64, evals: &mut u64, best: &mut Option<BestSample>, samples: &mut Vec<BestSample>| -> Result<f64> {
        let f = objective.evaluate(x)?;
        *evals += 1;
        match best {
            Some(b) if f >= b.f => {}
            _ => *best = Some(BestSample { evaluations: *evals, x, f }),
        }
        let b = best.expect("best set above");
        samples.push(BestSample { evaluations: *evals, x: b.x, f: b.f });
        Ok(f)
    };

    for _ in 0..config.population {
        if evals >= config.max_evaluations {
            break;
        }
        let x = lo + (hi - lo) * rng.gen::<f64>();
        let f = evaluate(x, &mut evals, &mut best, &mut samples)?;
        population.push((x, f));
    }

    while evals < config.max_evaluations {
        let elite = population
            .iter()
            .copied()
            .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite fitness"))
            .expect("population is nonempty");
        let mut next = Vec::with_capacity(config.population);
        next.push(elite);
        while next.len() < config.population && evals < config.max_evaluations {
            let p1 = tournament_pick(&population, config.tournament, rng);
            let p2 = tournament_pick(&population, config.tournament, rng);
            let mut child = if rng.gen::<f64>() < config.crossover_rate {
                blend(p1.0, p2.0, rng)
            } else if p1.1 <= p2.1 {
                p1.0
            } else {
                p2.0
            };
            if rng.gen::<f64>() < config.mutation_rate {
                child += mutation.sample(rng);
            }
            let child = clamp(child, lo, hi);
            let f = evaluate(child, &mut evals, &mut best, &mut samples)?;
            next.push((child, f));
        }
        population = next;
    }
    Ok(EvalTrace { samples })
}

/// Uniform draw from the parents' interval extended by 50% on each side.
fn blend<R: Rng + ?Sized>(a: f64, b: f64, rng: &mut R) -> f64 {
    let lo = a.min(b);
    let hi = a.max(b);
    let spread = hi - lo;
    let left = lo - 0.5 * spread;
    let right = hi + 0.5 * spread;
    if right > left {
        left + (right - left) * rng.gen::<f64>()
    } else {
        lo
    }
}

fn tournament_pick<R: Rng + ?Sized>(population: &[(f64, f64)], size: usize, rng: &mut R) -> (f64, f64) {
    let mut winner = population[rng.gen_range(0..population.len())];
    for _ in 1..size {
        let challenger = population[rng.gen_range(0..population.len())];
        if challenger.1 < winner.1 {
            winner = challenger;
        }
    }
    winner
}
