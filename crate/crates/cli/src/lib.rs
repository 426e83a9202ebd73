//! Library side of the `pooled` command: record parsing, rendering and the
//! `combine`, `recover` and `check` commands.

pub mod commands;
pub mod config;
pub mod error;
pub mod records;
pub mod render;

pub use commands::{cmd_check, cmd_combine, cmd_recover, CheckOutcome};
pub use config::{OutputFormat, RunConfig};
pub use error::CliError;
pub use records::{parse_raw_values, parse_records, StudyRecord};
