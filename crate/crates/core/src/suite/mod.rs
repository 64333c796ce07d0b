//! Suite configuration, execution and report emission.

pub mod config;
pub mod report;
pub mod runner;

pub use config::{Format, SuiteConfig, SuiteName};
pub use report::{emit_report, parse_report, SuiteResult};
pub use runner::{job_names, run_suite};
