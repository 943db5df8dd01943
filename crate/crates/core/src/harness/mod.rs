//! Experiment configuration, repeated runs with aggregated convergence
//! curves, trace persistence, and brute-force verification.

mod config;
mod experiment;
mod verify;

pub use config::{AnnealerSection, DepthConfig, ExperimentConfig};
pub use experiment::{
    aggregate, aggregate_dir, csv_file_name, read_trace, read_trace_dir, run_experiment,
    trace_file_name, trace_from_jsonl, trace_to_jsonl, write_trace, AggregateCurve, AggregateRow,
    ExperimentResult, CSV_HEADER,
};
pub use verify::{selector_check, verify, SelectorCheck, VerifyReport, SELECTOR_DRAWS};
