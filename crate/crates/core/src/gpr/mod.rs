//! Gaussian process surrogate with Matérn and quantum-Matérn kernels.
//!
//! Inputs are expected to be scaled to comparable ranges by the caller;
//! targets are standardized internally and predictions returned in the
//! original units.

mod kernel;
mod kurtosis;
mod model;
pub mod optimize;

pub use kernel::{
    euclidean, matern, matern_at_distance, qm_kernel, quantum_term, KernelConfig, KernelVariant,
};
pub use kurtosis::{kurtosis, KurtosisEstimate, DEGENERATE_VARIANCE};
pub use model::{FitOptions, GprModel};
