//! Library side of the `quantumness` command-line tool.

pub mod check;
pub mod ensemble_file;
pub mod error;
pub mod examples;
pub mod sweep;
