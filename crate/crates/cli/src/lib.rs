//! Case configuration, orchestration and reports for the `heckendo` binary.

pub mod config;
pub mod report;
pub mod reproduce;

pub use config::{CaseConfig, LatticeChoice, PRESETS};
pub use report::{run_case, AnalysisReport, SCHEMA_VERSION};
pub use reproduce::{reproduce_paper, PaperReport};
