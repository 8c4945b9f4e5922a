//! Batch verification of the kernel identities and structure dumps.

pub mod config;
pub mod dump;
pub mod report;
pub mod suites;

use rayon::prelude::*;

pub use config::{ConfigError, SuiteConfig, SUITES};
pub use report::{Check, Report, Status};

/// Runs the configured suites in parallel; checks come back in canonical order.
pub fn run_suite(cfg: &SuiteConfig) -> Report {
    let names = cfg.ordered_suites();
    let runs: Vec<_> = names.par_iter().map(|n| suites::run(n, cfg)).collect();
    Report::new(names.iter().map(|s| s.to_string()).collect(), runs)
}
