//! Job configuration and execution behind the `superkac` binary.

pub mod config;
pub mod jobs;

pub use config::{load_config, parse_config, Action, ExportWhat, JobConfig};
pub use jobs::{execute, exit_code, write_outputs, Outcome};
