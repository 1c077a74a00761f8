//! Command-line front end for `confalg-core`: algebra text format, JSON and
//! LaTeX output, and the `confalg` commands.

pub mod commands;
pub mod doc;
pub mod error;
pub mod input;
pub mod render;
pub mod report;

pub use commands::{run, Cli};
pub use error::CliError;
