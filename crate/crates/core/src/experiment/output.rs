use std::path::Path;

use super::format::format_g17;
use super::report::{ExperimentReport, ExperimentResult, OutputError};

pub const MISMATCH_CSV_HEADER: [&str; 5] = [
    "phi",
    "epsilon",
    "delta_measured",
    "delta_predicted",
    "status",
];
pub const SCAN_CSV_HEADER: [&str; 2] = ["epsilon", "J"];

fn opt(x: Option<f64>) -> String {
    x.map(format_g17).unwrap_or_default()
}

/// Flattens a sweep or scan report to CSV text.
///
/// Mismatch sweeps give one row per `phi`; empty cells mean the value was
/// not available (see `status`). Discrepancy scans give the sampled curve.
pub fn csv_string(report: &ExperimentReport) -> Result<String, OutputError> {
    let result = report.result.as_ref().ok_or(OutputError::NoResult)?;
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    let write = |w: &mut csv::Writer<Vec<u8>>, rec: &[String]| {
        w.write_record(rec)
            .map_err(|e| OutputError::io(Path::new("<csv>"), e.into()))
    };
    match result {
        ExperimentResult::MismatchSweep { rows } => {
            write(&mut w, &MISMATCH_CSV_HEADER.map(String::from))?;
            for row in rows {
                write(
                    &mut w,
                    &[
                        format_g17(row.phi),
                        opt(row.epsilon_recovered),
                        opt(row.delta_measured),
                        opt(row.delta_predicted),
                        row.status.label().to_string(),
                    ],
                )?;
            }
        }
        ExperimentResult::DiscrepancyScan { curve, .. } => {
            write(&mut w, &SCAN_CSV_HEADER.map(String::from))?;
            for (e, j) in curve.epsilons.iter().zip(&curve.values) {
                write(&mut w, &[format_g17(*e), format_g17(*j)])?;
            }
        }
        other => return Err(OutputError::CsvUnsupported(other.kind().name().into())),
    }
    let bytes = w
        .into_inner()
        .map_err(|e| OutputError::io(Path::new("<csv>"), e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV fields are ASCII"))
}

pub fn write_csv(report: &ExperimentReport, path: &Path) -> Result<(), OutputError> {
    let text = csv_string(report)?;
    std::fs::write(path, text).map_err(|e| OutputError::io(path, e))
}
