//! Scenario runner for `nhqubit`: config files, figure presets, CSV and
//! JSON artifacts.

pub mod compare;
pub mod config;
mod error;
pub mod format;
pub mod presets;
pub mod run;

pub use compare::{compare, Comparison};
pub use config::{load, Output, Scenario};
pub use error::CliError;
pub use run::{render, run, simulate, Bundle, Outcome};

pub const THREADS_VAR: &str = "NHQUBIT_THREADS";

/// Worker count from `NHQUBIT_THREADS`; `0` or unset means one per core.
pub fn thread_count(value: Option<&str>) -> Result<usize, CliError> {
    match value.map(str::trim) {
        None | Some("") => Ok(0),
        Some(v) => v.parse().map_err(|_| CliError::Config(format!("{THREADS_VAR} must be a count, got `{v}`"))),
    }
}

/// Sizes the global rayon pool. Has no effect once the pool exists.
pub fn init_threads(n: usize) {
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
}
