//! Continuous-time quantum-walk propagator on the 1-D grid.
//!
//! One walk step is the closed-form lattice propagator
//! `F_{n,0} = i^n e^{-i z} e^{-V tau} J_n(z)` with spread `z = b tau / delta^2`:
//! a Toeplitz Bessel factor times a diagonal damping by the potential at the
//! final state, times a global phase. The band is truncated at the grid edges
//! (no wraparound); the Bessel tail decays super-exponentially beyond
//! `|n| ~ z`, so callers renormalize at sampling time.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{bessel_j_row, BesselRow};
use crate::statevector::{GridDomain, QuantumState};

/// Walk-step parameters. `z` is the dimensionless spread `b tau / delta^2`;
/// the preferred constructor takes `(z, tau)` and derives the diffusion
/// coefficient, which makes spatial reach and objective-damping strength
/// independently tunable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    b: f64,
    tau: f64,
    delta: f64,
    z: f64,
}

impl WalkParams {
    /// Build from the spread `z` and time step `tau`; `b = z delta^2 / tau`.
    ///
    /// `tau = 0` is allowed as the identity-propagator special case and then
    /// requires `z = 0`.
    pub fn from_spread(z: f64, tau: f64, delta: f64) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::Domain("grid spacing must be positive"));
        }
        if !(z >= 0.0) || !z.is_finite() {
            return Err(Error::Domain("spread z must be nonnegative"));
        }
        if !(tau >= 0.0) || !tau.is_finite() {
            return Err(Error::Domain("time step tau must be nonnegative"));
        }
        let b = if tau == 0.0 {
            if z != 0.0 {
                return Err(Error::Domain("tau = 0 requires z = 0"));
            }
            0.0
        } else {
            z * delta * delta / tau
        };
        Ok(WalkParams { b, tau, delta, z })
    }

    /// Build from the diffusion coefficient; `z = b tau / delta^2`.
    pub fn from_diffusion(b: f64, tau: f64, delta: f64) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::Domain("grid spacing must be positive"));
        }
        if !(b >= 0.0) || !b.is_finite() || !(tau >= 0.0) || !tau.is_finite() {
            return Err(Error::Domain("b and tau must be nonnegative"));
        }
        let z = b * tau / (delta * delta);
        Ok(WalkParams { b, tau, delta, z })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn spread(&self) -> f64 {
        self.z
    }
}

/// One-step walk propagator realized as Toeplitz band times diagonal damping.
#[derive(Debug, Clone)]
pub struct WalkOperator {
    params: WalkParams,
    potential: Vec<f64>,
    bessel: BesselRow,
    global_phase: Complex64,
    damping: Vec<f64>,
    /// Cached `i^d * e^{-iz} * J_d(z)` for offsets `d = -(N-1)..=N-1`.
    toeplitz: Vec<Complex64>,
}

impl WalkOperator {
    /// Build the propagator for a domain, walk parameters, and potential
    /// sampled on the grid.
    pub fn build(domain: GridDomain, params: WalkParams, potential: &[f64]) -> Result<Self> {
        let n = domain.len();
        if potential.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: potential.len() });
        }
        if params.delta() != domain.delta() {
            return Err(Error::Domain("walk parameters disagree with the grid spacing"));
        }
        let z = params.spread();
        let band = (n - 1) as i32;
        let bessel = bessel_j_row(-band, band, z)?;
        let global_phase = Complex64::new(libm::cos(z), -libm::sin(z));
        let mut damping = Vec::with_capacity(n);
        for &v in potential {
            let d = libm::exp(-v * params.tau());
            if !d.is_finite() || d <= 0.0 {
                return Err(Error::Numerical("potential damping factor overflowed"));
            }
            damping.push(d);
        }
        let toeplitz: Vec<Complex64> = (-band..=band)
            .map(|d| unit_power_of_i(d) * global_phase * bessel.value(d))
            .collect();
        Ok(WalkOperator {
            params,
            potential: potential.to_vec(),
            bessel,
            global_phase,
            damping,
            toeplitz,
        })
    }

    pub fn params(&self) -> WalkParams {
        self.params
    }

    pub fn potential(&self) -> &[f64] {
        &self.potential
    }

    pub fn bessel(&self) -> &BesselRow {
        &self.bessel
    }

    pub fn global_phase(&self) -> Complex64 {
        self.global_phase
    }

    pub fn damping(&self) -> &[f64] {
        &self.damping
    }

    /// Matrix element `(j, k) = i^(j-k) e^{-iz} e^{-V_j tau} J_{j-k}(z)`.
    pub fn entry(&self, j: usize, k: usize) -> Complex64 {
        let n = self.damping.len();
        let offset = j as i32 - k as i32 + (n - 1) as i32;
        self.toeplitz[offset as usize] * self.damping[j]
    }

    /// Apply one walk step. Offsets are clipped to the grid (truncation, no
    /// wraparound) and the result is intentionally not renormalized.
    pub fn apply(&self, state: &QuantumState) -> Result<QuantumState> {
        let n = self.damping.len();
        if state.domain().len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: state.domain().len() });
        }
        let amps = state.amplitudes();
        let mut acc = vec![Complex64::new(0.0, 0.0); n];
        for (k, &amp) in amps.iter().enumerate() {
            if amp.re == 0.0 && amp.im == 0.0 {
                continue;
            }
            let base = (n - 1) - k;
            for (j, slot) in acc.iter_mut().enumerate() {
                *slot += self.toeplitz[base + j] * amp;
            }
        }
        let mut any = false;
        for (j, slot) in acc.iter_mut().enumerate() {
            *slot *= self.damping[j];
            if slot.re != 0.0 || slot.im != 0.0 {
                any = true;
            }
        }
        if !any {
            return Err(Error::Numerical("walk output collapsed to the zero state"));
        }
        QuantumState::from_amplitudes(state.domain(), acc)
    }
}

fn unit_power_of_i(d: i32) -> Complex64 {
    match d.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Dense drift-diffusion Hamiltonian, row-major `N x N`: off-diagonals
/// `-b/(2 delta^2)`, diagonal `b/delta^2 - i V_k`.
pub fn build_hamiltonian(domain: GridDomain, b: f64, potential: &[f64]) -> Result<Vec<Complex64>> {
    let n = domain.len();
    if potential.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: potential.len() });
    }
    if !(b >= 0.0) || !b.is_finite() {
        return Err(Error::Domain("diffusion coefficient must be nonnegative"));
    }
    let delta = domain.delta();
    let hopping = -b / (2.0 * delta * delta);
    let onsite = b / (delta * delta);
    let mut h = vec![Complex64::new(0.0, 0.0); n * n];
    for k in 0..n {
        h[k * n + k] = Complex64::new(onsite, -potential[k]);
        if k > 0 {
            h[k * n + k - 1] = Complex64::new(hopping, 0.0);
        }
        if k + 1 < n {
            h[k * n + k + 1] = Complex64::new(hopping, 0.0);
        }
    }
    Ok(h)
}

/// Normalized one-step walk distribution from basis state `start`:
/// `p_j ∝ e^{-2 V_j tau} J_{j-start}(z)^2`.
///
/// The damping exponent is shifted by its maximum before exponentiation; the
/// shift cancels under normalization and keeps very deep potentials finite.
pub fn walk_probability_closed_form(
    domain: GridDomain,
    params: WalkParams,
    potential: &[f64],
    start: usize,
) -> Result<Vec<f64>> {
    let n = domain.len();
    if potential.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: potential.len() });
    }
    if start >= n {
        return Err(Error::IndexOutOfRange { index: start, len: n });
    }
    if params.delta() != domain.delta() {
        return Err(Error::Domain("walk parameters disagree with the grid spacing"));
    }
    let band = (n - 1) as i32;
    let bessel = bessel_j_row(-band, band, params.spread())?;
    let tau = params.tau();
    let mut peak_exponent = f64::NEG_INFINITY;
    for &v in potential {
        let e = -2.0 * v * tau;
        if e > peak_exponent {
            peak_exponent = e;
        }
    }
    let mut mass = 0.0f64;
    let mut out: Vec<f64> = (0..n)
        .map(|j| {
            let jn = bessel.value(j as i32 - start as i32);
            let w = libm::exp(-2.0 * potential[j] * tau - peak_exponent) * jn * jn;
            mass += w;
            w
        })
        .collect();
    if !mass.is_finite() || mass <= 0.0 {
        return Err(Error::Numerical("walk distribution has no probability mass"));
    }
    for w in &mut out {
        *w /= mass;
    }
    Ok(out)
}

/// Theorem-style efficiency test: one walk step beats `r` Grover rotations
/// when `sqrt(m) e^{-c tau} |J_L| > sin[(2r+1) asin sqrt(m/N)]`.
pub fn qw_efficiency_bound(
    m: usize,
    n: usize,
    threshold: f64,
    rotations: u32,
    params: WalkParams,
    j_lower: f64,
) -> Result<bool> {
    if m == 0 || m > n {
        return Err(Error::Domain("solution count must satisfy 1 <= m <= N"));
    }
    if !(libm::fabs(j_lower) <= 1.0) {
        return Err(Error::Domain("|J_L| cannot exceed 1"));
    }
    let lhs = libm::sqrt(m as f64) * libm::exp(-threshold * params.tau()) * libm::fabs(j_lower);
    let angle = libm::asin(libm::sqrt(m as f64 / n as f64));
    let rhs = libm::sin((2.0 * rotations as f64 + 1.0) * angle);
    Ok(lhs > rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn free_domain(q: u32) -> GridDomain {
        GridDomain::new(-5.0, 5.0, q).unwrap()
    }

    #[test]
    fn params_derive_each_other() {
        let d = 10.0 / 512.0;
        let p = WalkParams::from_spread(256.0, 0.1, d).unwrap();
        assert_abs_diff_eq!(p.b() * p.tau() / (d * d), 256.0, epsilon = 1e-9);
        let q = WalkParams::from_diffusion(p.b(), 0.1, d).unwrap();
        assert_abs_diff_eq!(q.spread(), 256.0, epsilon = 1e-9);
        assert!(WalkParams::from_spread(1.0, 0.0, d).is_err());
        assert!(WalkParams::from_spread(-1.0, 0.1, d).is_err());
        let id = WalkParams::from_spread(0.0, 0.0, d).unwrap();
        assert_eq!(id.b(), 0.0);
    }

    #[test]
    fn hamiltonian_matches_direct_substitution() {
        let d1 = GridDomain::new(0.0, 4.0, 2).unwrap();
        assert_eq!(d1.delta(), 1.0);
        let h = build_hamiltonian(d1, 1.0, &[0.0, 5.0, 0.0, 0.0]).unwrap();
        let n = 4;
        assert_eq!(h[0], Complex64::new(1.0, 0.0));
        assert_eq!(h[1], Complex64::new(-0.5, 0.0));
        assert_eq!(h[n + 1], Complex64::new(1.0, -5.0));
        assert_eq!(h[2 * n + 1], Complex64::new(-0.5, 0.0));
        assert_eq!(h[2], Complex64::new(0.0, 0.0));

        let d2 = GridDomain::new(0.0, 2.0, 2).unwrap();
        assert_eq!(d2.delta(), 0.5);
        let h2 = build_hamiltonian(d2, 2.0, &[0.0; 4]).unwrap();
        assert_eq!(h2[1], Complex64::new(-4.0, 0.0));
        assert!(build_hamiltonian(d2, 1.0, &[0.0; 3]).is_err());
    }

    #[test]
    fn zero_time_step_is_the_identity() {
        let domain = free_domain(4);
        let params = WalkParams::from_spread(0.0, 0.0, domain.delta()).unwrap();
        let op = WalkOperator::build(domain, params, &[1.0; 16]).unwrap();
        for j in 0..16 {
            for k in 0..16 {
                let e = op.entry(j, k);
                if j == k {
                    assert_eq!(e, Complex64::new(1.0, 0.0));
                } else {
                    assert_eq!(e, Complex64::new(0.0, 0.0));
                }
            }
        }
        let s = QuantumState::basis(domain, 5).unwrap();
        let t = op.apply(&s).unwrap();
        assert_eq!(t.amplitudes(), s.amplitudes());
    }

    #[test]
    fn free_walk_entries_have_bessel_magnitude() {
        let domain = free_domain(5);
        let params = WalkParams::from_spread(3.0, 0.1, domain.delta()).unwrap();
        let op = WalkOperator::build(domain, params, &[0.0; 32]).unwrap();
        for j in [0usize, 7, 19, 31] {
            for k in [0usize, 3, 16, 31] {
                let want = op.bessel().value(j as i32 - k as i32).abs();
                assert_abs_diff_eq!(op.entry(j, k).norm(), want, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let domain = free_domain(5);
        let id = WalkParams::from_spread(0.0, 0.0, domain.delta()).unwrap();
        let p = walk_probability_closed_form(domain, id, &[2.0; 32], 9).unwrap();
        assert_eq!(p[9], 1.0);
        assert_eq!(p.iter().sum::<f64>(), 1.0);

        let params = WalkParams::from_spread(3.0, 0.1, domain.delta()).unwrap();
        let flat = walk_probability_closed_form(domain, params, &[4.0; 32], 16).unwrap();
        let free = walk_probability_closed_form(domain, params, &[0.0; 32], 16).unwrap();
        for (a, b) in flat.iter().zip(&free) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-13);
        }
    }

    #[test]
    fn bessel_tail_is_super_exponential() {
        let domain = GridDomain::new(-5.0, 5.0, 7).unwrap();
        let params = WalkParams::from_spread(3.0, 0.1, domain.delta()).unwrap();
        let p = walk_probability_closed_form(domain, params, &[0.0; 128], 64).unwrap();
        for (j, &prob) in p.iter().enumerate() {
            if (j as i32 - 64).unsigned_abs() > 30 {
                assert!(prob < 1e-20, "p[{j}] = {prob}");
            }
        }
    }

    #[test]
    fn deep_negative_potentials_stay_finite() {
        let domain = free_domain(5);
        let params = WalkParams::from_spread(8.0, 1.5, domain.delta()).unwrap();
        let mut v = vec![0.0f64; 32];
        v[20] = -425.0;
        let p = walk_probability_closed_form(domain, params, &v, 16).unwrap();
        assert!(p.iter().all(|x| x.is_finite()));
        assert_abs_diff_eq!(p.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
        assert!(p[20] > 0.999);
        // Damping beyond the f64 exponent range is a reported failure.
        v[20] = -1000.0;
        let op = WalkOperator::build(domain, params, &v);
        assert!(matches!(op, Err(Error::Numerical(_))));
    }

    #[test]
    fn efficiency_bound_examples() {
        let params = WalkParams::from_spread(4.0, 0.1, 1.0).unwrap();
        // m = N/4, r = 1: the right side is exactly 1, so any left side <= 1 loses.
        assert!(!qw_efficiency_bound(128, 512, 0.0, 1, params, 0.05).unwrap());
        // Direct evaluation: left = 1.0, right ~ 0.0884.
        assert!(qw_efficiency_bound(4, 512, 0.0, 0, params, 0.5).unwrap());
        // (2r+1) asin sqrt(m/N) = pi/2 pushes the right side to 1.
        assert!(!qw_efficiency_bound(2, 8, 0.0, 1, params, 0.5).unwrap());
        assert!(qw_efficiency_bound(0, 8, 0.0, 1, params, 1.0).is_err());
        assert!(qw_efficiency_bound(9, 8, 0.0, 1, params, 1.0).is_err());
        assert!(qw_efficiency_bound(2, 8, 0.0, 1, params, 1.5).is_err());
    }
}
