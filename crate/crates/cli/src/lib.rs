//! Command-line front end for `lipgeo`.

pub mod commands;
pub mod curve_file;
pub mod error;
pub mod metric_arg;

pub use crate::error::{CliError, Result};
