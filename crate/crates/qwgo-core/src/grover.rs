//! Threshold-oracle Grover rotations on the emulated register.
//!
//! One rotation is the selective phase shift on states whose objective value
//! is strictly below the threshold, followed by the inversion about the mean
//! amplitude.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::statevector::QuantumState;

/// Objective values on the grid plus the current threshold; marks
/// `f(x_j) < c` with a strict inequality so non-improving samples are never
/// amplified.
#[derive(Debug, Clone)]
pub struct ThresholdOracle {
    values: Vec<f64>,
    threshold: f64,
    marked: Vec<bool>,
}

impl ThresholdOracle {
    pub fn new(values: &[f64], threshold: f64) -> Self {
        let marked = values.iter().map(|&v| v < threshold).collect();
        ThresholdOracle { values: values.to_vec(), threshold, marked }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn marked(&self) -> &[bool] {
        &self.marked
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of marked states, `m = |{j : f(x_j) < c}|`.
    pub fn count_solutions(&self) -> usize {
        self.marked.iter().filter(|&&m| m).count()
    }

    /// Total probability currently sitting on the marked set.
    pub fn marked_probability(&self, state: &QuantumState) -> Result<f64> {
        let p = state.probabilities()?;
        Ok(p.iter().zip(&self.marked).filter(|(_, &m)| m).map(|(p, _)| p).sum())
    }
}

/// Selective phase shift: negate the amplitude of every marked state.
pub fn apply_oracle(mut state: QuantumState, oracle: &ThresholdOracle) -> Result<QuantumState> {
    if state.domain().len() != oracle.len() {
        return Err(Error::DimensionMismatch { expected: oracle.len(), found: state.domain().len() });
    }
    for (amp, &marked) in state.amplitudes_mut().iter_mut().zip(oracle.marked()) {
        if marked {
            *amp = -*amp;
        }
    }
    Ok(state)
}

/// Diffusion operator: inversion about the mean amplitude,
/// `psi_j <- 2 mean(psi) - psi_j`.
pub fn apply_diffusion(mut state: QuantumState) -> QuantumState {
    let n = state.amplitudes().len();
    let mean = state.amplitudes().iter().sum::<Complex64>() / n as f64;
    let twice = mean + mean;
    for amp in state.amplitudes_mut() {
        *amp = twice - *amp;
    }
    state
}

/// `r` Grover rotations (oracle then diffusion, `r` times).
pub fn grover_rotations(
    state: QuantumState,
    oracle: &ThresholdOracle,
    rotations: u32,
) -> Result<QuantumState> {
    let mut state = state;
    for _ in 0..rotations {
        state = apply_diffusion(apply_oracle(state, oracle)?);
    }
    Ok(state)
}

/// Closed-form success probability of finding one of `m` marked states out of
/// `n` after `r` rotations from the uniform state:
/// `sin^2[(2r+1) asin sqrt(m/N)]`.
pub fn theoretical_success(m: usize, n: usize, rotations: u32) -> Result<f64> {
    if m == 0 || m > n {
        return Err(Error::Domain("marked count must satisfy 1 <= m <= N"));
    }
    let angle = libm::asin(libm::sqrt(m as f64 / n as f64));
    let s = libm::sin((2.0 * rotations as f64 + 1.0) * angle);
    Ok(s * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::GridDomain;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn uniform(q: u32) -> QuantumState {
        QuantumState::uniform(GridDomain::new(0.0, 1.0, q).unwrap())
    }

    #[test]
    fn counting_and_strictness() {
        let values = [3.0, 1.0, 2.0, 2.0];
        assert_eq!(ThresholdOracle::new(&values, 0.5).count_solutions(), 0);
        assert_eq!(ThresholdOracle::new(&values, 10.0).count_solutions(), 4);
        // A state whose value equals the threshold stays unmarked.
        let o = ThresholdOracle::new(&values, 2.0);
        assert_eq!(o.count_solutions(), 1);
        assert!(!o.marked()[2]);
        assert!(!o.marked()[3]);
    }

    #[test]
    fn oracle_phase_flip() {
        let s = uniform(2);
        let none = ThresholdOracle::new(&[5.0; 4], 1.0);
        let t = apply_oracle(s.clone(), &none).unwrap();
        assert_eq!(t.amplitudes(), s.amplitudes());

        let all = ThresholdOracle::new(&[0.0; 4], 1.0);
        let t = apply_oracle(s.clone(), &all).unwrap();
        for (a, b) in t.amplitudes().iter().zip(s.amplitudes()) {
            assert_eq!(*a, -*b);
        }
        assert_eq!(t.probabilities().unwrap(), s.probabilities().unwrap());

        // Uniform overlap after marking m of N states: <u|psi'> = (N - 2m)/N.
        let m = 1;
        let o = ThresholdOracle::new(&[0.0, 5.0, 5.0, 5.0], 1.0);
        let t = apply_oracle(s.clone(), &o).unwrap();
        let overlap: f64 = t
            .amplitudes()
            .iter()
            .zip(s.amplitudes())
            .map(|(a, b)| (a * b.conj()).re)
            .sum();
        assert_abs_diff_eq!(overlap, (4.0 - 2.0 * m as f64) / 4.0, epsilon = 1e-15);
    }

    #[test]
    fn diffusion_fixes_uniform_and_is_an_involution() {
        let s = uniform(3);
        let t = apply_diffusion(s.clone());
        for (a, b) in t.amplitudes().iter().zip(s.amplitudes()) {
            assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-15);
            assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-15);
        }

        let d = GridDomain::new(0.0, 1.0, 2).unwrap();
        let hot = QuantumState::basis(d, 0).unwrap();
        let once = apply_diffusion(hot.clone());
        assert_abs_diff_eq!(once.amplitudes()[0].re, -0.5, epsilon = 1e-15);
        for j in 1..4 {
            assert_abs_diff_eq!(once.amplitudes()[j].re, 0.5, epsilon = 1e-15);
        }
        let twice = apply_diffusion(once);
        for (a, b) in twice.amplitudes().iter().zip(hot.amplitudes()) {
            assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-14);
            assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-14);
        }
    }

    #[test]
    fn quarter_marked_single_rotation_is_certain() {
        let d = GridDomain::new(0.0, 1.0, 9).unwrap();
        let values: Vec<f64> = (0..512).map(|j| j as f64).collect();
        let oracle = ThresholdOracle::new(&values, 128.0);
        assert_eq!(oracle.count_solutions(), 128);
        let s = grover_rotations(QuantumState::uniform(d), &oracle, 1).unwrap();
        let got = oracle.marked_probability(&s).unwrap();
        assert_abs_diff_eq!(got, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn simulated_law_matches_closed_form() {
        let d = GridDomain::new(0.0, 1.0, 9).unwrap();
        let values: Vec<f64> = (0..512).map(|j| j as f64).collect();
        for m in [1usize, 2, 64, 128, 256] {
            let oracle = ThresholdOracle::new(&values, m as f64);
            for r in [0u32, 1, 3, 7, 18, 25] {
                let s = grover_rotations(QuantumState::uniform(d), &oracle, r).unwrap();
                let got = oracle.marked_probability(&s).unwrap();
                let want = theoretical_success(m, 512, r).unwrap();
                assert_abs_diff_eq!(got, want, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn theoretical_success_examples() {
        assert_abs_diff_eq!(theoretical_success(5, 20, 0).unwrap(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(theoretical_success(128, 512, 1).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(theoretical_success(1, 512, 18).unwrap(), 0.9958, epsilon = 5e-5);
        assert!(theoretical_success(0, 512, 1).is_err());
        assert!(theoretical_success(513, 512, 1).is_err());
    }

    proptest! {
        #[test]
        fn rotations_preserve_norm(q in 2u32..8, marked_below in 0.0f64..1.0, r in 0u32..40) {
            let n = 1usize << q;
            let d = GridDomain::new(0.0, 1.0, q).unwrap();
            let values: Vec<f64> = (0..n).map(|j| j as f64 / n as f64).collect();
            let oracle = ThresholdOracle::new(&values, marked_below);
            let s = grover_rotations(QuantumState::uniform(d), &oracle, r).unwrap();
            let norm: f64 = s.amplitudes().iter().map(|a| a.norm_sqr()).sum();
            prop_assert!((norm - 1.0).abs() <= 1e-12);
        }
    }
}
