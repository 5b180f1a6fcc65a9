//! Configuration and subcommands of the `anbimod` command-line tool.

pub mod commands;
pub mod config;

pub use config::RunConfig;
