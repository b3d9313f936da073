use std::process::ExitCode;

use thiserror::Error;

/// Errors that stop a command before any check runs. All map to exit code 2;
/// failed checks are reported through [`Outcome`] instead.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] a1tk_core::Error),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    CheckFailed,
}

impl Outcome {
    pub fn from_holds(holds: bool) -> Self {
        if holds {
            Outcome::Pass
        } else {
            Outcome::CheckFailed
        }
    }
}

pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

pub fn exit_code(result: &Result<Outcome, CliError>) -> ExitCode {
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(_) => ExitCode::from(EXIT_USAGE),
    }
}
