use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use super::config::{BasisSpec, ExperimentConfig, ExperimentKind};
use crate::analysis::{
    discrepancy_scan, mismatch_sweep, multi_frequency_disambiguate, DiscrepancyCurve,
    MismatchReport, MultiFrequencyResult,
};
use crate::error::{Error, Result};
use crate::models::{synthesize, BasisKind, SeriesModel, SyntheticDatum};
use crate::solver::{solve_mirror, solve_polynomial, ComparisonProblem, SolutionSet};

/// Report schema; loaders accept any `1.x`.
pub const SCHEMA_VERSION: &str = "1.0";

/// What an experiment produced, tagged by kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ExperimentResult {
    Invert {
        datum: SyntheticDatum,
        solutions: SolutionSet,
    },
    MirrorInvert {
        datum: SyntheticDatum,
        solutions: SolutionSet,
    },
    MultiFrequency(MultiFrequencyResult),
    MismatchSweep {
        rows: Vec<MismatchReport>,
    },
    DiscrepancyScan {
        datum: SyntheticDatum,
        curve: DiscrepancyCurve,
    },
}

impl ExperimentResult {
    pub fn kind(&self) -> ExperimentKind {
        match self {
            ExperimentResult::Invert { .. } => ExperimentKind::Invert,
            ExperimentResult::MirrorInvert { .. } => ExperimentKind::MirrorInvert,
            ExperimentResult::MultiFrequency(_) => ExperimentKind::MultiFrequency,
            ExperimentResult::MismatchSweep { .. } => ExperimentKind::MismatchSweep,
            ExperimentResult::DiscrepancyScan { .. } => ExperimentKind::DiscrepancyScan,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorPayload {
    /// Error variant name, e.g. `NoSolutionPossible`.
    pub kind: String,
    pub message: String,
}

/// The serialized outcome of one experiment.
///
/// `config` is absent only when the config itself failed to load.
/// `wall_time_ms` is recorded only by [`run_timed`], so that plain runs stay
/// byte-reproducible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: String,
    pub config: Option<ExperimentConfig>,
    pub result: Option<ExperimentResult>,
    pub error: Option<ErrorPayload>,
    pub wall_time_ms: Option<f64>,
}

impl ExperimentReport {
    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }

    pub fn kind(&self) -> Option<ExperimentKind> {
        self.config.as_ref().map(|c| c.kind)
    }
}

/// A report carrying only an error, for failures before or outside `run`.
pub fn error_report(
    config: Option<ExperimentConfig>,
    kind: &str,
    message: String,
) -> ExperimentReport {
    ExperimentReport {
        schema_version: SCHEMA_VERSION.into(),
        config,
        result: None,
        error: Some(ErrorPayload {
            kind: kind.into(),
            message,
        }),
        wall_time_ms: None,
    }
}

/// Executes a config. Domain errors become the report's error payload.
pub fn run(config: &ExperimentConfig) -> ExperimentReport {
    match execute(config) {
        Ok(result) => ExperimentReport {
            schema_version: SCHEMA_VERSION.into(),
            config: Some(config.clone()),
            result: Some(result),
            error: None,
            wall_time_ms: None,
        },
        Err(e) => error_report(Some(config.clone()), e.kind(), e.to_string()),
    }
}

/// Like [`run`], also recording elapsed wall time.
pub fn run_timed(config: &ExperimentConfig) -> ExperimentReport {
    let start = Instant::now();
    let mut report = run(config);
    report.wall_time_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    report
}

/// Dispatches a config to the analysis it names.
pub fn execute(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config
        .validate()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let tol = &config.tolerances;
    let range = config.range;
    let truth = || {
        config
            .truth
            .ok_or_else(|| Error::InvalidArgument("truth is required".into()))
    };

    let result = match config.kind {
        ExperimentKind::Invert => {
            let (datum, problem) = crime_problem(config, truth()?)?;
            ExperimentResult::Invert {
                datum,
                solutions: solve_polynomial(&problem, tol)?,
            }
        }
        ExperimentKind::MirrorInvert => {
            let (datum, problem) = crime_problem(config, truth()?)?;
            ExperimentResult::MirrorInvert {
                datum,
                solutions: solve_mirror(&problem, config.lattice_bound, tol)?,
            }
        }
        ExperimentKind::MultiFrequency => {
            let ks = config.wavenumbers.as_deref().unwrap_or_default();
            let template =
                SeriesModel::mirror(ks.first().copied().unwrap_or(1.0), config.coefficients[0])?;
            ExperimentResult::MultiFrequency(multi_frequency_disambiguate(
                &template,
                truth()?,
                ks,
                range,
                tol,
            )?)
        }
        ExperimentKind::MismatchSweep => ExperimentResult::MismatchSweep {
            rows: mismatch_sweep(
                &config.coefficients,
                config.estimator_order,
                config.predictor_order,
                config.phi_grid.as_deref().unwrap_or_default(),
                range,
                tol,
            )?,
        },
        ExperimentKind::DiscrepancyScan => {
            let (datum, problem) = crime_problem(config, truth()?)?;
            ExperimentResult::DiscrepancyScan {
                datum,
                curve: discrepancy_scan(&problem, config.samples)?,
            }
        }
    };
    Ok(result)
}

/// Predictor of order `N`, estimator of order `M`, same coefficients.
fn crime_problem(
    config: &ExperimentConfig,
    truth: f64,
) -> Result<(SyntheticDatum, ComparisonProblem)> {
    let basis = match config.basis {
        BasisSpec::Monomial => BasisKind::Monomial,
        spec => spec
            .resolve()
            .ok_or_else(|| Error::InvalidArgument("basis wavenumber is required".into()))?,
    };
    let predictor = SeriesModel::new(
        basis,
        config.coefficients[..=config.predictor_order].to_vec(),
    )?;
    let estimator = SeriesModel::new(
        basis,
        config.coefficients[..=config.estimator_order].to_vec(),
    )?;
    let datum = synthesize(
        &predictor,
        truth,
        config.range,
        config.noise_magnitude,
        config.seed,
    )?;
    let problem = ComparisonProblem::new(estimator, datum, config.range)?;
    Ok((datum, problem))
}

/// Report, CSV and plot output failures.
#[derive(Debug, Error)]
pub enum OutputError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),

    #[error("unsupported report schema version {0:?}")]
    UnsupportedVersion(String),

    #[error("CSV output is not defined for {0} reports")]
    CsvUnsupported(String),

    #[error("PlotUnsupported: no plot is defined for {0} reports")]
    PlotUnsupported(String),

    #[error("report has no result to render")]
    NoResult,
}

impl OutputError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        OutputError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json(report: &ExperimentReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports contain only finite numbers");
    s.push('\n');
    s
}

pub fn write_report(
    report: &ExperimentReport,
    path: &Path,
) -> std::result::Result<(), OutputError> {
    std::fs::write(path, to_json(report)).map_err(|e| OutputError::io(path, e))
}

/// Parses a report, rejecting schema major versions other than 1.
pub fn load_report(text: &str) -> std::result::Result<ExperimentReport, OutputError> {
    let value: Value = serde_json::from_str(text)?;
    let version = value
        .get("schema_version")
        .and_then(Value::as_str)
        .ok_or_else(|| OutputError::UnsupportedVersion("<missing>".into()))?;
    let major = SCHEMA_VERSION.split('.').next();
    if version.split('.').next() != major {
        return Err(OutputError::UnsupportedVersion(version.into()));
    }
    Ok(serde_json::from_value(value)?)
}

pub fn read_report(path: &Path) -> std::result::Result<ExperimentReport, OutputError> {
    let text = std::fs::read_to_string(path).map_err(|e| OutputError::io(path, e))?;
    load_report(&text)
}
