//! Scenario runner: reads TOML scenario files, samples seeded instances,
//! dispatches to `fano-core` and writes JSON reports.

pub mod catalog;
pub mod checks;
pub mod error;
pub mod instances;
pub mod report;
pub mod run;
pub mod scenario;

pub use catalog::Catalog;
pub use error::{CliError, CliResult};
pub use report::{Report, Status};
pub use run::{run, run_with_threads, selftest_scenarios};
pub use scenario::{CheckKind, Overrides, Scenario};

/// Exit code for unreadable or malformed input.
pub const EXIT_INPUT_ERROR: i32 = 2;
