//! Command-line front end: state construction, nullifier solving, checks and exports.

pub mod app;
pub mod commands;
pub mod config;
pub mod error;
pub mod spec;

pub use app::{execute, execute_args, main_with, Cli};
pub use error::CliError;
