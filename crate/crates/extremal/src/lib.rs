//! File formats, configuration, parallel drivers and the command-line runner
//! around `extremal-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod manifest;
pub mod parallel;

pub use config::RunConfig;
pub use error::CliError;
