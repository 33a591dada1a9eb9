//! Instance generation, the exhaustive small-instance oracle, statistics runs
//! and the plain-text analysis report.

mod gen;
mod oracle;
mod report;
mod stats;

pub use gen::{random_connected, GenSpec, Style};
pub use oracle::{
    enumerate_connected, oracle_reachable, translation_key, OracleError, OracleResult,
    DEFAULT_MAX_STATES,
};
pub use report::analyze_report;
pub use stats::{loglog_slope, stats_run, write_csv, StatsRow, CSV_HEADER};
