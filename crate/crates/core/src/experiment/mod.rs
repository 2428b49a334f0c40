//! Config-driven experiment runner with JSON reports, CSV tables and SVG plots.
//!
//! A config names one of five experiment kinds plus the model parameters;
//! [`run`] executes it and always returns a report, carrying either a result
//! or an error payload. Reports, CSV files and plots are byte-for-byte
//! reproducible for a given config.

mod config;
pub mod format;
mod output;
mod plot;
mod report;

pub use config::{
    load_config, BasisSpec, ConfigError, ExperimentConfig, ExperimentKind, DEFAULT_SCAN_SAMPLES,
};
pub use output::{csv_string, write_csv, MISMATCH_CSV_HEADER, SCAN_CSV_HEADER};
pub use plot::{emit_plot, render_svg};
pub use report::{
    error_report, execute, load_report, read_report, run, run_timed, to_json, write_report,
    ErrorPayload, ExperimentReport, ExperimentResult, OutputError, SCHEMA_VERSION,
};
