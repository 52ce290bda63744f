//! Command-line driver: configure a run, execute the constructions and
//! checks, and report.

pub mod config;
pub mod report;
pub mod run;

pub use config::{parse_config, Invocation, ParseOutcome, RunConfig, UsageError};
pub use report::Report;
pub use run::run;
