use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the simulation modules.
///
/// Every variant names the offending parameter so callers (the CLI in
/// particular) can turn it into a diagnostic without further context.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown mode {mode} (state has {n_modes} modes)")]
    UnknownMode { mode: usize, n_modes: usize },

    #[error("beam splitter needs two distinct modes, got {0} twice")]
    DegenerateModePair(usize),

    #[error("invalid parameter `{name}` = {value}: expected {constraint}")]
    Constraint {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("invalid argument `{name}`: {reason}")]
    Argument {
        name: &'static str,
        reason: &'static str,
    },
}

impl Error {
    pub(crate) fn constraint(name: &'static str, value: f64, constraint: &'static str) -> Self {
        Error::Constraint {
            name,
            value,
            constraint,
        }
    }

    /// Name of the parameter the error refers to, if any.
    pub fn parameter(&self) -> Option<&'static str> {
        match self {
            Error::Constraint { name, .. } | Error::Argument { name, .. } => Some(name),
            _ => None,
        }
    }
}
