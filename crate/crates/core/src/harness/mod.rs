//! Command-line front end: configuration, verification suites, writers and
//! the polynomial cache file.

pub mod cache_file;
pub mod cli;
pub mod config;
pub mod output;
pub mod report;
pub mod suites;

pub use cache_file::{cache_load, cache_store, CacheError, CACHE_VERSION};
pub use cli::run_command;
pub use config::{Config, ConfigError};
pub use output::{latex_poly, Format, OutputError};
pub use report::{CheckResult, Outcome, Report};
pub use suites::{run_suites, Suite};
