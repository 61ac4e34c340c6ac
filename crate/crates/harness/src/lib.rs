//! Configuration, experiment orchestration and result files for the
//! equivariant Faddeev solver.

pub mod config;
pub mod error;
pub mod experiment;
pub mod output;
pub mod registry;
pub mod report;
pub mod summary;

pub use config::{DataProfile, ExperimentConfig, ExperimentKind};
pub use error::{HarnessError, Result};
pub use summary::SummaryDocument;

/// The published JSON schema of `summary.json`.
pub const SUMMARY_SCHEMA: &str = include_str!("../schema/summary.schema.json");
