//! Command-line front end for `helly-core`: analysis reports, generators,
//! certificate replay, property suites and the τ ≤ 2 Leray experiment.

pub mod certs;
pub mod config;
pub mod error;
pub mod generate;
pub mod question1;
pub mod report;
pub mod suites;

pub use certs::{load_object, parse_object, verify_certificate, Certificate, Object};
pub use config::{Arith, RunConfig};
pub use error::{CliResult, Failure};
pub use report::{analyze_object, AnalysisReport, REPORT_SCHEMA};
