//! Quantum approximate Bayesian optimization with two mixers.
//!
//! A statevector simulator runs alternating phase-separation and mixer layers
//! (Pauli-X, XY, generalized Grover, or Pauli-X followed by Grover) whose
//! angles, together with any continuous design variables, are chosen by
//! Gaussian-process Bayesian optimization.

pub mod bayesopt;
pub mod error;
pub mod gpr;
pub mod harness;
pub mod problems;
pub mod statevector;

pub use error::{Error, Result};
