//! Command-line harness around `airy-core`.
//!
//! Every subcommand writes into its own directory: `manifest.json` with the
//! configuration echo, versions and wall time, plus CSV (or JSON) tables.

pub mod cli;
pub mod commands;
pub mod error;
pub mod output;
pub mod parallel;

pub use error::{exit_code, usage, UsageError};

use cli::Command;

pub fn dispatch(cmd: &Command) -> anyhow::Result<()> {
    match cmd {
        Command::Run(a) => commands::run::run(a),
        Command::Coefficients(a) => commands::coefficients::run(a),
        Command::Compare(a) => commands::compare::run(a),
        Command::ScalingStudy(a) => commands::scaling::run(a),
        Command::Convergence(a) => commands::convergence::run(a),
    }
}
