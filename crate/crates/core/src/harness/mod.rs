//! Experiment orchestration, benchmarking, and the command-line front end.

pub mod bench;
pub mod cli;
pub mod experiment;
pub mod spec;

pub use bench::{bench_measures, BenchRow};
pub use experiment::{run_experiment, ExperimentOutcome};
pub use spec::{ExperimentSpec, ModelChoice, WeightedMode};
