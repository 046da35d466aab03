//! Subcommand implementations behind the `eqext` binary.

pub mod commands;
pub mod report;

pub use commands::{cmd_anomaly, cmd_getzler_check, cmd_invariants, cmd_relcoh, cmd_series, cmd_wzw_verify};
pub use report::{Outcome, RunReport, Status};

/// Exit status for unusable input.
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
}
