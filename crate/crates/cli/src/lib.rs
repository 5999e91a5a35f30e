//! Command-line front end for `benford-core`: argument parsing, input
//! loading and the versioned JSON report.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod report;

pub use args::Cli;
pub use commands::{execute, render, Output};
pub use error::{CliError, Result};
pub use report::{Num, Report};

/// Runs a parsed command line and writes the rendered output to `--out` or
/// returns it for stdout.
pub fn run(cli: &Cli) -> Result<Option<String>> {
    let out = execute(cli)?;
    let text = render(&out, cli.format)?;
    match &cli.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Write { path: path.clone(), source })?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}
