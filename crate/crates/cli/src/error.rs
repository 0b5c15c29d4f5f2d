use thiserror::Error;

/// Problems with a configuration document. Each variant has a stable code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("[E_SYNTAX] line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },

    #[error("[E_UNKNOWN_KIND] unknown experiment kind `{0}` (expected one of mz, trials, strategy, trigger, scatter, well, optimize)")]
    UnknownKind(String),

    #[error("[E_KIND_MISMATCH] command asks for `{requested}` but the file declares kind = {declared}")]
    KindMismatch {
        requested: &'static str,
        declared: &'static str,
    },

    #[error("[E_MISSING_KEY] missing required key `{0}`")]
    MissingKey(&'static str),

    #[error("[E_UNKNOWN_KEY] unknown key `{0}`")]
    UnknownKey(String),

    #[error("[E_DUPLICATE_KEY] key `{0}` given more than once")]
    DuplicateKey(String),

    #[error("[E_BAD_VALUE] key `{key}`: cannot read `{value}` as {expected}")]
    BadValue {
        key: String,
        value: String,
        expected: &'static str,
    },

    #[error("[E_CONSTRAINT] key `{key}`: {constraint}")]
    Constraint { key: String, constraint: String },

    #[error("[E_ENV] {0}")]
    Environment(String),

    #[error("[E_READ] cannot read config `{path}`: {reason}")]
    Read { path: String, reason: String },
}

impl ConfigError {
    pub fn code(&self) -> &'static str {
        match self {
            ConfigError::Syntax { .. } => "E_SYNTAX",
            ConfigError::UnknownKind(_) => "E_UNKNOWN_KIND",
            ConfigError::KindMismatch { .. } => "E_KIND_MISMATCH",
            ConfigError::MissingKey(_) => "E_MISSING_KEY",
            ConfigError::UnknownKey(_) => "E_UNKNOWN_KEY",
            ConfigError::DuplicateKey(_) => "E_DUPLICATE_KEY",
            ConfigError::BadValue { .. } => "E_BAD_VALUE",
            ConfigError::Constraint { .. } => "E_CONSTRAINT",
            ConfigError::Environment(_) => "E_ENV",
            ConfigError::Read { .. } => "E_READ",
        }
    }

    pub(crate) fn constraint(key: &str, constraint: &str) -> Self {
        ConfigError::Constraint {
            key: key.to_string(),
            constraint: constraint.to_string(),
        }
    }
}

impl From<ifm_core::Error> for ConfigError {
    fn from(err: ifm_core::Error) -> Self {
        match err {
            ifm_core::Error::Constraint {
                name,
                value,
                constraint,
            } => ConfigError::Constraint {
                key: name.to_string(),
                constraint: format!("{constraint} (got {value})"),
            },
            ifm_core::Error::Argument { name, reason } => ConfigError::constraint(name, reason),
            other => ConfigError::constraint("config", &other.to_string()),
        }
    }
}

/// Failures after a configuration has been accepted.
#[derive(Debug, Error)]
pub enum RunError {
    #[error("[E_IO] {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("[E_MODEL] {0}")]
    Model(#[from] ifm_core::Error),

    #[error("[E_SERIALIZE] {0}")]
    Serialize(#[from] serde_json::Error),
}
