//! Input files, reports, the piece cache and subcommand dispatch.

pub mod cache;
pub mod fixtures;
pub mod input;
pub mod report;
pub mod run;
pub mod selftest;

pub use cache::DiskCache;
pub use input::{parse_input, InputFile, JobSpec, Overrides};
pub use report::Report;
pub use run::{grid_subgroups, run, Command};
pub use selftest::run_selftest;
