//! Command-line verifier for the rank n swapping algebra: expression
//! parsing, verification campaigns and deterministic reports.

pub mod commands;
pub mod parser;
pub mod report;

pub use commands::{run, EXIT_PARSE, EXIT_PASS, EXIT_PRECONDITION, EXIT_VERIFICATION_FAILED};
