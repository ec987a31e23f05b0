//! Command-line front end, file formats and reporting for `descend-core`.

pub mod cli;
pub mod randprog;
pub mod replay;
pub mod report;
pub mod source;
pub mod spec;
pub mod trace;

pub use source::{load, Error, Loaded};
