//! Studies built on the solvers: discrepancy scans, multi-frequency ghost
//! elimination and truncation-mismatch error analysis.

mod discrepancy;
mod mismatch;
mod multifreq;

pub use discrepancy::{discrepancy_scan, DiscrepancyCurve, DiscrepancyMinimum, MIN_SCAN_SAMPLES};
pub use mismatch::{
    mismatch_closed_form, mismatch_sweep, MismatchReport, RowStatus, CLOSED_FORM_AGREEMENT,
};
pub use multifreq::{multi_frequency_disambiguate, FrequencySolution, MultiFrequencyResult};
