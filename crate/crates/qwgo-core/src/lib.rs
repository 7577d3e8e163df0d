//! Exact statevector emulation of quantum-walk enhanced Grover search for
//! global optimization of one-dimensional objectives on a 2^q grid.
//!
//! The crate provides the numerical kernels (integer-order Bessel functions,
//! the continuous-time quantum-walk propagator, threshold-oracle Grover
//! rotations), the benchmark objectives, the hybrid optimizer loop with its
//! static rotation schedule, and classical baseline heuristics. Everything is
//! deterministic for a given seeded random stream; no IO lives here.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod baselines;
pub mod ctqw;
pub mod error;
pub mod grover;
pub mod objectives;
pub mod optimizer;
pub mod specfun;
pub mod statevector;

pub use error::{Error, Result};
pub use num_complex::Complex64;
