//! Front end for `dualdeg`: argument parsing, reports and the acceptance suite.

pub mod commands;
pub mod report;
pub mod suite;

pub use commands::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
