use std::path::Path;

use catec_core::Error;

/// Exit code for unreadable input, I/O failures and bad parameters.
pub const EXIT_INPUT: u8 = 1;
/// Exit code for an algorithm that cannot handle the instance.
pub const EXIT_INCOMPATIBLE: u8 = 2;
/// Exit code for a solver that failed on valid input.
pub const EXIT_SOLVER: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_INPUT,
            CliError::Core { source, .. } => match source {
                Error::WrongCategoryCount { .. }
                | Error::WildcardUnsupported { .. }
                | Error::WrongArity { .. } => EXIT_INCOMPATIBLE,
                Error::Infeasible
                | Error::IterationLimit
                | Error::Solver(_)
                | Error::InvalidNetwork(_) => EXIT_SOLVER,
                _ => EXIT_INPUT,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Attaches a short description of what was being done to core errors.
pub trait Context<T> {
    fn context(self, what: impl Into<String>) -> CliResult<T>;

    fn at(self, path: &Path) -> CliResult<T>
    where
        Self: Sized,
    {
        self.context(path.display().to_string())
    }
}

impl<T> Context<T> for catec_core::Result<T> {
    fn context(self, what: impl Into<String>) -> CliResult<T> {
        self.map_err(|source| CliError::Core {
            context: what.into(),
            source,
        })
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
