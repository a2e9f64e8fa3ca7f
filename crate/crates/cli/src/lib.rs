//! Command-line harness for rotatable-array null steering.

pub mod args;
mod commands;
pub mod format;
pub mod spec;
pub mod svg;

use std::fmt;

pub use args::{Cli, Command};
pub use spec::RunSpec;

/// Failure with the process exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config file or parameters (exit 2).
    Input(anyhow::Error),
    /// Beamforming or optimisation failure (exit 3).
    Numerical(anyhow::Error),
    /// Could not write outputs (exit 1).
    Io(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub(crate) fn core(err: raa_core::Error, what: &str) -> Self {
        use raa_core::Error as E;
        let kind = match &err {
            E::DegenerateDesired => "degenerate desired direction",
            E::SingularGram { .. } => "singular interference Gram matrix",
            E::InfeasibleM { .. } => "infeasible orthogonality integer",
            E::InvalidConfig(_) | E::Precondition(_) => {
                return CliError::Input(anyhow::Error::new(err).context(what.to_string()))
            }
        };
        CliError::Numerical(anyhow::Error::new(err).context(format!("{what}: {kind}")))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(e) | CliError::Numerical(e) | CliError::Io(e) => write!(f, "{e:#}"),
        }
    }
}

impl std::error::Error for CliError {}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let spec = RunSpec::resolve(cli).map_err(CliError::Input)?;
    match spec.command {
        Command::Pattern => commands::pattern(&spec),
        Command::Analyze => commands::analyze(&spec),
        Command::Optimize => commands::optimize(&spec),
        Command::Montecarlo => commands::montecarlo(&spec),
    }
}
