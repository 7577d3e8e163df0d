//! Bessel functions of the first kind of integer order.
//!
//! Evaluation uses a single backward (Miller-type) recurrence sweep from a
//! padded start order, normalized through the identity
//! `J_0(z)^2 + 2 sum_{k>=1} J_k(z)^2 = 1`. Backward recurrence is stable for
//! orders far above the argument, where the forward recurrence diverges;
//! the propagator needs orders up to N-1 at arguments of order N/2.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest supported |order|.
pub const MAX_ORDER: i32 = 100_000;

/// Rescale guard for the unnormalized recurrence values. Kept low enough
/// that squaring a guarded value for the normalization sum stays finite.
const RESCALE_LIMIT: f64 = 1e140;
const RESCALE_FACTOR: f64 = 1e-140;

/// Below this argument the two-term power series is exact to f64 precision
/// and avoids huge `2n/z` recurrence coefficients.
const SERIES_CUTOFF: f64 = 1e-9;

/// `J_n(z)` for `n = n_min..=n_max` at a fixed argument.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselRow {
    z: f64,
    n_min: i32,
    n_max: i32,
    values: Vec<f64>,
}

impl BesselRow {
    pub fn argument(&self) -> f64 {
        self.z
    }

    pub fn order_range(&self) -> (i32, i32) {
        (self.n_min, self.n_max)
    }

    /// `J_n(z)`. Panics if `n` is outside the row's order range.
    pub fn value(&self, n: i32) -> f64 {
        assert!(
            n >= self.n_min && n <= self.n_max,
            "order {n} outside row range [{}, {}]",
            self.n_min,
            self.n_max
        );
        self.values[(n - self.n_min) as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn validate(n_abs_max: i32, z: f64) -> Result<()> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::Domain("bessel argument must be a nonnegative finite real"));
    }
    if n_abs_max > MAX_ORDER {
        return Err(Error::Domain("bessel order exceeds the supported range"));
    }
    Ok(())
}

/// `J_n(z)` of the first kind, integer order.
///
/// Negative orders go through the reflection `J_{-n}(z) = (-1)^n J_n(z)`, so
/// the identity holds exactly in floating point.
pub fn bessel_j(n: i32, z: f64) -> Result<f64> {
    let a = n.checked_abs().ok_or(Error::Domain("bessel order exceeds the supported range"))?;
    validate(a, z)?;
    if z == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let row = nonneg_orders(a as usize, z);
    let v = row[a as usize];
    Ok(if n < 0 && (n & 1) != 0 { -v } else { v })
}

/// `J_n(z)` for every order in `n_min..=n_max`, evaluated in one backward
/// recurrence sweep.
pub fn bessel_j_row(n_min: i32, n_max: i32, z: f64) -> Result<BesselRow> {
    if n_min > n_max {
        return Err(Error::Domain("empty bessel order range"));
    }
    let a_min = n_min.checked_abs().ok_or(Error::Domain("bessel order exceeds the supported range"))?;
    let a = a_min.max(n_max.abs());
    validate(a, z)?;

    let len = (n_max - n_min) as usize + 1;
    let mut values = vec![0.0f64; len];
    if z == 0.0 {
        if n_min <= 0 && 0 <= n_max {
            values[(-n_min) as usize] = 1.0;
        }
    } else {
        let nonneg = nonneg_orders(a as usize, z);
        for (slot, n) in values.iter_mut().zip(n_min..=n_max) {
            let v = nonneg[n.unsigned_abs() as usize];
            *slot = if n < 0 && (n & 1) != 0 { -v } else { v };
        }
    }
    Ok(BesselRow { z, n_min, n_max, values })
}

/// First derivative `J_n'(z) = (J_{n-1}(z) - J_{n+1}(z)) / 2`.
///
/// For `n = 0` the reflection turns this into `-J_1(z)`.
pub fn bessel_j_deriv(n: i32, z: f64) -> Result<f64> {
    let a = n.checked_abs().ok_or(Error::Domain("bessel order exceeds the supported range"))?;
    if a >= MAX_ORDER {
        return Err(Error::Domain("bessel order exceeds the supported range"));
    }
    let row = bessel_j_row(n - 1, n + 1, z)?;
    Ok(0.5 * (row.value(n - 1) - row.value(n + 1)))
}

/// Unnormalized-then-normalized backward sweep producing `J_0..=J_max`.
///
/// The start order sits above both the requested top order and the turning
/// point `n ~ z`, padded by `max(20, ceil(5 z^(1/3)))`.
fn nonneg_orders(max_order: usize, z: f64) -> Vec<f64> {
    debug_assert!(z > 0.0);
    if z < SERIES_CUTOFF {
        return series_orders(max_order, z);
    }

    let turning = libm::ceil(z) as usize;
    // A pad of max(20, 5 z^(1/3)) leaves ~4e-12 residual error near z ~ 60,
    // which already busts the 1e-12 target; doubling it is still cheap.
    let margin = 40usize.max(libm::ceil(10.0 * libm::cbrt(z)) as usize);
    let start = max_order.max(turning) + margin;

    let mut out = vec![0.0f64; max_order + 1];
    let mut above = 0.0f64; // unnormalized J~_{n+1}
    let mut current = 1e-30f64; // unnormalized J~_n
    let mut sum_sq = 0.0f64; // 2 * sum_{k>=1} J~_k^2
    let mut n = start;
    loop {
        if n <= max_order {
            out[n] = current;
        }
        if n == 0 {
            break;
        }
        sum_sq += 2.0 * current * current;
        let below = (2.0 * n as f64 / z) * current - above;
        above = current;
        current = below;
        n -= 1;
        if libm::fabs(current) > RESCALE_LIMIT {
            current *= RESCALE_FACTOR;
            above *= RESCALE_FACTOR;
            sum_sq *= RESCALE_FACTOR * RESCALE_FACTOR;
            for v in out.iter_mut() {
                *v *= RESCALE_FACTOR;
            }
        }
    }
    let norm = out[0] * out[0] + sum_sq;
    let scale = 1.0 / libm::sqrt(norm);
    for v in out.iter_mut() {
        *v *= scale;
    }
    out
}

/// Leading power-series terms, exact to f64 for tiny arguments.
fn series_orders(max_order: usize, z: f64) -> Vec<f64> {
    let mut out = vec![0.0f64; max_order + 1];
    out[0] = 1.0 - z * z / 4.0;
    if max_order >= 1 {
        out[1] = 0.5 * z;
        for n in 2..=max_order {
            out[n] = out[n - 1] * z / (2.0 * n as f64);
            if out[n] == 0.0 {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// Independent oracle: the ascending power series
    /// `J_n(z) = sum_m (-1)^m (z/2)^{n+2m} / (m! (n+m)!)`, usable for
    /// moderate arguments.
    fn series_oracle(n: u32, z: f64) -> f64 {
        let half = z / 2.0;
        let mut term = 1.0f64;
        for k in 1..=n {
            term *= half / k as f64;
        }
        let mut sum = term;
        let mut m = 1u32;
        loop {
            term *= -(half * half) / (m as f64 * (m + n) as f64);
            sum += term;
            if libm::fabs(term) < 1e-18 * (1.0 + libm::fabs(sum)) || m > 400 {
                break;
            }
            m += 1;
        }
        sum
    }

    #[test]
    fn zero_argument_is_kronecker_delta() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(7, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(-7, 0.0).unwrap(), 0.0);
        let row = bessel_j_row(-2, 2, 0.0).unwrap();
        assert_eq!(row.values(), &[0.0, 0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn reflection_against_spot_value() {
        let pos = bessel_j(3, 5.0).unwrap();
        let neg = bessel_j(-3, 5.0).unwrap();
        assert_eq!(pos, -neg);
    }

    #[test]
    fn first_zero_of_j0() {
        assert_abs_diff_eq!(bessel_j(0, 2.404825557695773).unwrap(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn matches_power_series_oracle() {
        for n in [0u32, 1, 2, 3, 5, 8, 13, 21, 30] {
            for z in [0.1f64, 0.5, 1.0, 2.0, 3.7, 5.0, 8.0, 10.0] {
                let want = series_oracle(n, z);
                let got = bessel_j(n as i32, z).unwrap();
                assert_abs_diff_eq!(got, want, epsilon = 1e-12);
            }
            // The f64 series oracle itself cancels ~7 digits by z = 20, so the
            // comparison loosens there; the normalization and recurrence
            // invariants carry the accuracy claim at large arguments.
            for z in [15.0f64, 20.0] {
                let want = series_oracle(n, z);
                let got = bessel_j(n as i32, z).unwrap();
                assert_abs_diff_eq!(got, want, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn row_agrees_with_scalar_routine() {
        let row = bessel_j_row(0, 5, 1.0).unwrap();
        assert_abs_diff_eq!(row.value(1), bessel_j(1, 1.0).unwrap(), epsilon = 1e-14);
        let wide = bessel_j_row(-12, 9, 7.5).unwrap();
        for n in -12..=9 {
            assert_abs_diff_eq!(wide.value(n), bessel_j(n, 7.5).unwrap(), epsilon = 1e-13);
        }
    }

    #[test]
    fn propagator_row_mass_is_unity() {
        let row = bessel_j_row(-511, 511, 256.0).unwrap();
        let sum: f64 = row.values().iter().map(|v| v * v).sum();
        assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn reflection_identity_is_exact() {
        for z in [0.1f64, 1.0, 10.0, 100.0] {
            let row = bessel_j_row(-64, 64, z).unwrap();
            for n in 0..=64 {
                let diff = row.value(-n) - if n & 1 != 0 { -row.value(n) } else { row.value(n) };
                assert!(diff.abs() <= 1e-14, "reflection broke at n={n} z={z}");
            }
        }
    }

    #[test]
    fn squared_sum_normalization() {
        for z in [1.0f64, 10.0, 100.0, 500.0] {
            let m = libm::ceil(z) as i32 + 40;
            let row = bessel_j_row(-m, m, z).unwrap();
            let sum: f64 = row.values().iter().map(|v| v * v).sum();
            assert!(
                (1.0 - 1e-10..=1.0 + 1e-10).contains(&sum),
                "sum {sum} out of band for z={z}"
            );
        }
    }

    #[test]
    fn three_term_recurrence_residual() {
        for z in [0.5f64, 1.0, 5.0, 20.0, 100.0, 500.0] {
            let top = libm::ceil(z) as i32 + 20;
            let row = bessel_j_row(-(top + 1), top + 1, z).unwrap();
            for n in -top..=top {
                let residual = row.value(n - 1) + row.value(n + 1) - (2.0 * n as f64 / z) * row.value(n);
                let bound = 1e-9 * row.value(n).abs().max(1.0);
                assert!(
                    residual.abs() <= bound,
                    "residual {residual} at n={n} z={z}"
                );
            }
        }
    }

    #[test]
    fn derivative_examples_and_finite_differences() {
        assert_eq!(bessel_j_deriv(0, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j_deriv(1, 0.0).unwrap(), 0.5);
        let h = 1e-6;
        for n in [0i32, 1, 2, 4, 9, 30] {
            for z in [0.7f64, 3.0, 10.0, 42.0] {
                let fd = (bessel_j(n, z + h).unwrap() - bessel_j(n, z - h).unwrap()) / (2.0 * h);
                assert_abs_diff_eq!(bessel_j_deriv(n, z).unwrap(), fd, epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(bessel_j(0, -1.0), Err(Error::Domain("bessel argument must be a nonnegative finite real")));
        assert!(bessel_j(MAX_ORDER + 1, 1.0).is_err());
        assert!(bessel_j_row(3, 1, 1.0).is_err());
        assert!(bessel_j(0, f64::NAN).is_err());
    }

    #[test]
    fn large_order_far_beyond_argument_underflows_cleanly() {
        let v = bessel_j(5000, 10.0).unwrap();
        assert!(v.abs() < 1e-300);
        assert!(v == 0.0 || v.is_normal() || v.is_subnormal());
    }

    proptest! {
        #[test]
        fn row_values_stay_bounded(z in 0.0f64..1000.0, lo in -300i32..0, hi in 0i32..300) {
            let row = bessel_j_row(lo, hi, z).unwrap();
            let sum: f64 = row.values().iter().map(|v| v * v).sum();
            prop_assert!(sum <= 1.0 + 1e-10);
            for v in row.values() {
                prop_assert!(v.abs() <= 1.0);
            }
        }

        #[test]
        fn row_reflection_holds(z in 0.0f64..200.0, span in 1i32..128) {
            let row = bessel_j_row(-span, span, z).unwrap();
            for n in 1..=span {
                let expect = if n & 1 != 0 { -row.value(n) } else { row.value(n) };
                prop_assert_eq!(row.value(-n), expect);
            }
        }
    }
}
