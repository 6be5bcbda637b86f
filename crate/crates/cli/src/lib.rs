//! Experiment runner for the `wdm-groom` solver: sweeps over node count,
//! granularity and pattern count, comparing the dynamic GA against the
//! max-traffic-matrix baseline and the analytical bounds.

pub mod config;
pub mod experiment;
pub mod export;

pub use config::{ExperimentConfig, SweepPoint};
pub use experiment::{revalidate, run_experiment, run_experiment_with, run_point, ExperimentResult, ExperimentRun, PointResult};
pub use export::{csv, load_result, write_outputs, CSV_HEADER};
