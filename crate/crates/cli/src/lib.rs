//! Configuration, execution and data output for the `ifm` command.

pub mod config;
pub mod error;
pub mod run;

pub use config::{parse_config, parse_config_for, ExperimentConfig, Kind, Params};
pub use error::{ConfigError, RunError};
pub use run::{execute, run, write_outputs, RunOutput, RunSummary};
