//! Benchmark objectives, their grid discretization, reference optima, and the
//! three-qubit fixed-point oracle demonstration.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::statevector::GridDomain;

const TWO_PI: f64 = core::f64::consts::TAU;

/// Built-in benchmark objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Rastrigin,
    Schwefel,
    Ackley,
}

/// Closed-form description of an objective: name, default search domain, and
/// its reference optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveSpec {
    pub name: &'static str,
    pub domain: (f64, f64),
    pub optimum_x: f64,
    pub optimum_f: f64,
}

impl Objective {
    pub const ALL: [Objective; 3] = [Objective::Rastrigin, Objective::Schwefel, Objective::Ackley];

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "rastrigin" => Some(Objective::Rastrigin),
            "schwefel" => Some(Objective::Schwefel),
            "ackley" => Some(Objective::Ackley),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Objective::Rastrigin => "rastrigin",
            Objective::Schwefel => "schwefel",
            Objective::Ackley => "ackley",
        }
    }

    /// Closed-form value at `x`.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::Domain("objective argument must be finite"));
        }
        let f = match self {
            Objective::Rastrigin => 10.0 + x * x - 10.0 * libm::cos(TWO_PI * x),
            Objective::Schwefel => {
                let u = 30.0 * x;
                -4.189829 + u * libm::sin(libm::sqrt(libm::fabs(u)))
            }
            Objective::Ackley => {
                -20.0 * libm::exp(-0.2 * libm::fabs(4.0 * x)) - libm::exp(libm::cos(TWO_PI * x))
            }
        };
        if !f.is_finite() {
            return Err(Error::Numerical("objective evaluated to a non-finite value"));
        }
        Ok(f)
    }

    /// Default search interval. The paper-style Rastrigin interval is
    /// `[-5, 5]`; Schwefel gets `[-15, 15]` so its minimizer near `-14.03`
    /// lies inside.
    pub fn default_domain(&self) -> (f64, f64) {
        match self {
            Objective::Rastrigin => (-5.0, 5.0),
            Objective::Schwefel => (-15.0, 15.0),
            Objective::Ackley => (-5.0, 5.0),
        }
    }

    /// Reference optimum on the default domain.
    ///
    /// Rastrigin and Ackley have their minimum at the origin by inspection;
    /// the Schwefel optimum is located numerically by a dense scan plus a
    /// golden-section refinement, trusting the formula as printed rather than
    /// external tables.
    pub fn known_optimum(&self) -> (f64, f64) {
        match self {
            Objective::Rastrigin => (0.0, 0.0),
            Objective::Ackley => (0.0, self.evaluate(0.0).unwrap_or(f64::NAN)),
            Objective::Schwefel => {
                let (lo, hi) = self.default_domain();
                dense_scan_minimum(*self, lo, hi, 1 << 20)
            }
        }
    }

    pub fn spec(&self) -> ObjectiveSpec {
        let (optimum_x, optimum_f) = self.known_optimum();
        ObjectiveSpec { name: self.name(), domain: self.default_domain(), optimum_x, optimum_f }
    }
}

/// Brute-force minimum over `points` equispaced samples, refined by a
/// golden-section search in the bracketing cell.
pub fn dense_scan_minimum(objective: Objective, lo: f64, hi: f64, points: usize) -> (f64, f64) {
    let step = (hi - lo) / points as f64;
    let mut best_x = lo;
    let mut best_f = f64::INFINITY;
    for j in 0..=points {
        let x = lo + j as f64 * step;
        if let Ok(f) = objective.evaluate(x) {
            if f < best_f {
                best_f = f;
                best_x = x;
            }
        }
    }
    let mut a = (best_x - step).max(lo);
    let mut b = (best_x + step).min(hi);
    let inv_phi = 0.618_033_988_749_894_9_f64;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = objective.evaluate(c).unwrap_or(f64::INFINITY);
    let mut fd = objective.evaluate(d).unwrap_or(f64::INFINITY);
    for _ in 0..120 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective.evaluate(c).unwrap_or(f64::INFINITY);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective.evaluate(d).unwrap_or(f64::INFINITY);
        }
    }
    let x = 0.5 * (a + b);
    let f = objective.evaluate(x).unwrap_or(f64::INFINITY);
    if f < best_f {
        (x, f)
    } else {
        (best_x, best_f)
    }
}

/// Objective sampled on every grid point, `f(x_j)` for `j = 0..N-1`.
pub fn grid_values(objective: Objective, domain: &GridDomain) -> Result<Vec<f64>> {
    (0..domain.len()).map(|j| objective.evaluate(domain.coord(j))).collect()
}

/// Index and value of the smallest entry; ties break to the lowest index.
pub fn grid_argmin(values: &[f64]) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (j, &v) in values.iter().enumerate() {
        match best {
            Some((_, bv)) if v >= bv => {}
            _ => best = Some((j, v)),
        }
    }
    best
}

/// Bitwise oracle network evaluating `e^{-x}` on a three-qubit machine with
/// fixed-point input `x = 0.x1x2x3` and output `0.f1f2f3`.
pub fn fixedpoint_eval_exp(x1: bool, x2: bool, x3: bool) -> (bool, bool, bool) {
    let f1 = !(x1 && x2 && x3);
    let f2 = (!x1 && !x2) || (!x1 && x2 && !x3) || (x1 && x2 && x3);
    let f3 = (!x1 && (!x2 || (x2 && x3))) || (x1 && !x2 && !x3) || (x1 && x2 && x3);
    (f1, f2, f3)
}
