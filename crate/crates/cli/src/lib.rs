//! Command-line front end: file formats, command dispatch and reports.

mod commands;
pub mod format;
mod report;

pub use commands::{run, Outcome};
pub use report::Report;
