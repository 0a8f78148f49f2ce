//! Command-line front end and file formats for `fpknot-core`.

pub mod cli;
pub mod error;
pub mod input;
pub mod json;
pub mod report;
pub mod suite;

pub use error::{CliError, Result};
