//! Batch driver for the verification suites: a flat configuration, suites that
//! turn every identity into a pass/fail check, parameter scans, and reports in
//! JSON, CSV or text.

pub mod anchors;
pub mod config;
pub mod error;
pub mod report;
pub mod scan;
pub mod suites;

pub use config::{Format, GroupChoice, RunConfig, Suite};
pub use error::HarnessError;
pub use report::{CheckResult, Relation, Summary, VerificationReport, SCHEMA_VERSION};
pub use scan::{rows_to_csv, scan, Axis, ScanRow};
pub use suites::run_suite;

pub type Result<T> = std::result::Result<T, HarnessError>;
