//! The hybrid loop: circuit assembly per algorithm variant, UCB acquisition
//! maximized by simulated annealing, and best-so-far tracking.

mod acquisition;
mod circuit;
mod run;
mod variant;

pub use acquisition::{
    maximize_acquisition, ucb, AnnealResult, AnnealerConfig, SearchPoint, SearchSpace,
};
pub use circuit::{build_and_run_circuit, grover_targets, objective_from_histogram, prepare_state};
pub use run::{
    derive_seed, initial_design, run, six_angle_variants, IterationRecord, RunConfig, RunTrace,
};
pub use variant::{AlgorithmVariant, ExplorationMixer, MixerKind};
