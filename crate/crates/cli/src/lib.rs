//! Command-line front end: JSON problem configs in, summaries and JSON
//! reports out.

pub mod commands;
pub mod config;
pub mod report;

pub use commands::{execute, run_command, CaseChoice, CliError, Command, Outcome, Overrides, Status};
pub use config::{load_config, parse_config, ConfigError, ProblemConfig};
