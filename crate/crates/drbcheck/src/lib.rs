//! Command line driver for `drbcheck-core`: runs each case analysis, compares
//! verdicts with versioned fixtures and writes JSON or markdown reports.

pub mod certs;
pub mod cli;
pub mod commands;
pub mod io;
pub mod report;

pub use cli::{main_with, run, Cli, Command, Format, RunConfig};
pub use report::{Report, Summary};
