//! Verification suites, the result cache and report types used by the
//! `weylrack` binary.

pub mod cache;
pub mod report;
pub mod suites;

pub use cache::{Cache, ResultRecord, LIBRARY_VERSION, SCHEMA_VERSION};
pub use report::{Check, SuiteReport};
pub use suites::{run_suite, Suite, SuiteParams, DEFAULT_SEED};
