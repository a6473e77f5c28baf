//! Command-line driver for `chm-core`: the matrix file format, report
//! rendering, thread pools and command dispatch.

pub mod commands;
pub mod matfile;
pub mod report;
pub mod workers;

pub use commands::{run, Cli};
