//! Exact q-qubit register emulation: amplitudes, normalization, uniform
//! initialization, and projective measurement by inverse-CDF sampling.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Discretization of `[x_lower, x_upper]` into `2^qubits` grid points with
/// left-aligned coordinates `x_j = x_lower + j * delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridDomain {
    x_lower: f64,
    x_upper: f64,
    qubits: u32,
    states: usize,
    delta: f64,
}

impl GridDomain {
    pub fn new(x_lower: f64, x_upper: f64, qubits: u32) -> Result<Self> {
        if !x_lower.is_finite() || !x_upper.is_finite() || x_upper <= x_lower {
            return Err(Error::Domain("grid needs finite bounds with x_upper > x_lower"));
        }
        if qubits == 0 || qubits > 24 {
            return Err(Error::Domain("qubit count must lie in 1..=24"));
        }
        let states = 1usize << qubits;
        let delta = (x_upper - x_lower) / states as f64;
        Ok(GridDomain { x_lower, x_upper, qubits, states, delta })
    }

    pub fn x_lower(&self) -> f64 {
        self.x_lower
    }

    pub fn x_upper(&self) -> f64 {
        self.x_upper
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    /// Number of grid states, `N = 2^q`.
    pub fn len(&self) -> usize {
        self.states
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid spacing.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Coordinate of grid state `j`.
    pub fn coord(&self, j: usize) -> f64 {
        self.x_lower + j as f64 * self.delta
    }
}

/// Complex amplitude vector over the grid states of one register.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    domain: GridDomain,
    amplitudes: Vec<Complex64>,
}

impl QuantumState {
    /// Basis state `|j>`.
    pub fn basis(domain: GridDomain, j: usize) -> Result<Self> {
        if j >= domain.len() {
            return Err(Error::IndexOutOfRange { index: j, len: domain.len() });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); domain.len()];
        amplitudes[j] = Complex64::new(1.0, 0.0);
        Ok(QuantumState { domain, amplitudes })
    }

    /// Uniform superposition, the Hadamard image of `|0>`: every amplitude
    /// equals `1/sqrt(N)`.
    pub fn uniform(domain: GridDomain) -> Self {
        let amp = Complex64::new(1.0 / libm::sqrt(domain.len() as f64), 0.0);
        QuantumState { domain, amplitudes: vec![amp; domain.len()] }
    }

    pub fn from_amplitudes(domain: GridDomain, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != domain.len() {
            return Err(Error::DimensionMismatch { expected: domain.len(), found: amplitudes.len() });
        }
        Ok(QuantumState { domain, amplitudes })
    }

    pub fn domain(&self) -> GridDomain {
        self.domain
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// Squared-magnitude distribution, renormalized on read.
    ///
    /// The walk propagator is deliberately sub-normalized (objective damping
    /// plus boundary truncation), so callers always see a unit-mass vector.
    /// Magnitudes are pre-scaled by the largest component, which keeps the
    /// computation finite even when damping pushes amplitudes near the f64
    /// overflow threshold.
    pub fn probabilities(&self) -> Result<Vec<f64>> {
        let peak = self.peak_component();
        if peak == 0.0 {
            return Err(Error::Numerical("all-zero state has no distribution"));
        }
        let mut mass = 0.0f64;
        let mut out: Vec<f64> = self
            .amplitudes
            .iter()
            .map(|a| {
                let re = a.re / peak;
                let im = a.im / peak;
                let p = re * re + im * im;
                mass += p;
                p
            })
            .collect();
        if !mass.is_finite() || mass == 0.0 {
            return Err(Error::Numerical("probability mass is not finite"));
        }
        for p in &mut out {
            *p /= mass;
        }
        Ok(out)
    }

    /// Rescale to unit total probability, leaving directions unchanged.
    pub fn normalized(mut self) -> Result<Self> {
        let peak = self.peak_component();
        if peak == 0.0 {
            return Err(Error::Numerical("cannot normalize the all-zero state"));
        }
        let mass: f64 = self
            .amplitudes
            .iter()
            .map(|a| {
                let re = a.re / peak;
                let im = a.im / peak;
                re * re + im * im
            })
            .sum();
        if !mass.is_finite() || mass == 0.0 {
            return Err(Error::Numerical("cannot normalize: mass is not finite"));
        }
        let scale = 1.0 / (peak * libm::sqrt(mass));
        for a in &mut self.amplitudes {
            *a = Complex64::new(a.re * scale, a.im * scale);
        }
        Ok(self)
    }

    /// Projective measurement in the computational basis.
    ///
    /// Consumes exactly one uniform variate and inverts the cumulative
    /// distribution, so a fixed seed reproduces the same index sequence.
    pub fn measure<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        let peak = self.peak_component();
        if peak == 0.0 {
            return Err(Error::Numerical("cannot measure the all-zero state"));
        }
        let weights: Vec<f64> = self
            .amplitudes
            .iter()
            .map(|a| {
                let re = a.re / peak;
                let im = a.im / peak;
                re * re + im * im
            })
            .collect();
        let total: f64 = weights.iter().sum();
        if !total.is_finite() || total == 0.0 {
            return Err(Error::Numerical("probability mass is not finite"));
        }
        let u: f64 = rng.gen();
        let target = u * total;
        let mut cumulative = 0.0;
        for (j, w) in weights.iter().enumerate() {
            cumulative += w;
            if cumulative > target {
                return Ok(j);
            }
        }
        // Rounding can leave the cumulative a hair short of the total.
        Ok(self.amplitudes.len() - 1)
    }

    fn peak_component(&self) -> f64 {
        let mut peak = 0.0f64;
        for a in &self.amplitudes {
            let re = libm::fabs(a.re);
            let im = libm::fabs(a.im);
            if re > peak {
                peak = re;
            }
            if im > peak {
                peak = im;
            }
        }
        peak
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn domain(q: u32) -> GridDomain {
        GridDomain::new(-5.0, 5.0, q).unwrap()
    }

    #[test]
    fn grid_coordinates_are_left_aligned_and_increasing() {
        let d = domain(9);
        assert_eq!(d.len(), 512);
        assert_eq!(d.coord(0), -5.0);
        assert_eq!(d.coord(256), 0.0);
        for j in 1..d.len() {
            assert!(d.coord(j) > d.coord(j - 1));
        }
        assert!(GridDomain::new(1.0, 1.0, 3).is_err());
        assert!(GridDomain::new(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn basis_state_is_a_delta() {
        let d = domain(3);
        let s = QuantumState::basis(d, 3).unwrap();
        let p = s.probabilities().unwrap();
        assert_eq!(p[3], 1.0);
        assert_eq!(p.iter().sum::<f64>(), 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..16 {
            assert_eq!(s.measure(&mut rng).unwrap(), 3);
        }
        assert!(QuantumState::basis(d, 8).is_err());
    }

    #[test]
    fn uniform_state_probabilities() {
        let d = domain(9);
        let s = QuantumState::uniform(d);
        for p in s.probabilities().unwrap() {
            assert_eq!(p, 1.0 / 512.0);
        }
        let d4 = GridDomain::new(0.0, 1.0, 2).unwrap();
        for a in QuantumState::uniform(d4).amplitudes() {
            assert_eq!(a.re, 0.5);
            assert_eq!(a.im, 0.0);
        }
    }

    #[test]
    fn uniform_is_the_hadamard_image_of_basis_zero() {
        // Direct construction: q single-qubit Hadamards on |0> give every
        // basis state the amplitude (1/sqrt(2))^q.
        for q in [1u32, 4, 9] {
            let d = domain(q);
            let mut had = 1.0f64;
            for _ in 0..q {
                had *= core::f64::consts::FRAC_1_SQRT_2;
            }
            for a in QuantumState::uniform(d).amplitudes() {
                assert_abs_diff_eq!(a.re, had, epsilon = 1e-15);
                assert_eq!(a.im, 0.0);
            }
        }
    }

    #[test]
    fn probabilities_are_scale_invariant() {
        let d = domain(4);
        let s = QuantumState::uniform(d);
        let mut t = s.clone();
        for a in t.amplitudes_mut() {
            *a *= 0.5;
        }
        assert_eq!(s.probabilities().unwrap(), t.probabilities().unwrap());
    }

    #[test]
    fn normalize_examples() {
        let d = GridDomain::new(0.0, 1.0, 2).unwrap();
        let s = QuantumState::from_amplitudes(
            d,
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let n = s.normalized().unwrap();
        assert_eq!(n.amplitudes()[0], Complex64::new(1.0, 0.0));

        let d2 = GridDomain::new(0.0, 1.0, 1).unwrap();
        let s = QuantumState::from_amplitudes(d2, vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)])
            .unwrap();
        let n = s.normalized().unwrap();
        let r = 1.0 / 2.0f64.sqrt();
        assert_abs_diff_eq!(n.amplitudes()[0].re, r, epsilon = 1e-15);
        assert_abs_diff_eq!(n.amplitudes()[1].im, r, epsilon = 1e-15);

        let again = n.clone().normalized().unwrap();
        for (a, b) in again.amplitudes().iter().zip(n.amplitudes()) {
            assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-15);
            assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-15);
        }
    }

    #[test]
    fn zero_state_fails_everywhere() {
        let d = GridDomain::new(0.0, 1.0, 1).unwrap();
        let z = QuantumState::from_amplitudes(d, vec![Complex64::new(0.0, 0.0); 2]).unwrap();
        assert!(z.probabilities().is_err());
        assert!(z.clone().normalized().is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(z.measure(&mut rng).is_err());
    }

    #[test]
    fn measurement_is_reproducible_for_equal_seeds() {
        let d = domain(9);
        let s = QuantumState::uniform(d);
        let mut a = ChaCha8Rng::seed_from_u64(99);
        let mut b = ChaCha8Rng::seed_from_u64(99);
        let seq_a: Vec<usize> = (0..64).map(|_| s.measure(&mut a).unwrap()).collect();
        let seq_b: Vec<usize> = (0..64).map(|_| s.measure(&mut b).unwrap()).collect();
        assert_eq!(seq_a, seq_b);
    }

    #[test]
    fn huge_amplitudes_still_yield_a_distribution() {
        let d = GridDomain::new(0.0, 1.0, 1).unwrap();
        let s = QuantumState::from_amplitudes(
            d,
            vec![Complex64::new(1e200, 0.0), Complex64::new(1e200, 0.0)],
        )
        .unwrap();
        let p = s.probabilities().unwrap();
        assert_abs_diff_eq!(p[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p[1], 0.5, epsilon = 1e-15);
    }

    proptest! {
        #[test]
        fn probabilities_sum_to_one(parts in proptest::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 8)) {
            let d = GridDomain::new(0.0, 1.0, 3).unwrap();
            let amps: Vec<Complex64> = parts.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
            let nonzero = amps.iter().any(|a| a.re != 0.0 || a.im != 0.0);
            let s = QuantumState::from_amplitudes(d, amps).unwrap();
            if nonzero {
                let p = s.probabilities().unwrap();
                let total: f64 = p.iter().sum();
                prop_assert!((total - 1.0).abs() <= 1e-12);
            }
        }
    }
}
