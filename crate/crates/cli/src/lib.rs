//! Command-line front end for `johnson-core`: graph generation, isomorphism
//! certification, property checks with JSON reports, grid sweeps and replay
//! of recorded counterexamples.
//!
//! Exit codes are 0 when every verdict is pass, 1 on any fail, inconclusive
//! or internal fault, and 2 on usage or I/O errors.

pub mod args;
pub mod checks;
pub mod commands;
pub mod error;
pub mod replay;
pub mod report;

pub use error::CliError;
