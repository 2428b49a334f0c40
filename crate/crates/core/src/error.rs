use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the numerical modules (models, solver, analysis).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("InvalidBasisIndex: mirror-exponential basis is defined only for m = 0, got m = {0}")]
    InvalidBasisIndex(usize),

    #[error("InvalidWavenumber: wavenumber must be positive and finite, got {0}")]
    InvalidWavenumber(f64),

    #[error("CoefficientCount: order {order} requires {} coefficients, got {got}", order + 1)]
    CoefficientCount { order: usize, got: usize },

    #[error("NonFiniteCoefficient: coefficient a_{0} is not finite")]
    NonFiniteCoefficient(usize),

    #[error("DegenerateLeadingCoefficient: |a_{order}| = {magnitude:e} is below 1e-14")]
    DegenerateLeadingCoefficient { order: usize, magnitude: f64 },

    #[error("InvalidRange: require finite lo < hi, got ({lo}, {hi})")]
    InvalidRange { lo: f64, hi: f64 },

    #[error("TruthOutOfRange: {truth} is not inside the open interval ({lo}, {hi})")]
    TruthOutOfRange { truth: f64, lo: f64, hi: f64 },

    #[error("InvalidNoise: noise magnitude must be finite and non-negative, got {0}")]
    InvalidNoise(f64),

    #[error("IncompatibleBasis: {0}")]
    IncompatibleBasis(String),

    #[error("NoSolutionPossible: constant estimator {estimator} never equals datum {datum}")]
    NoSolutionPossible { estimator: String, datum: String },

    #[error("EverywhereSolution: constant estimator equals the datum for every parameter value")]
    EverywhereSolution,

    #[error("InconsistentModulus: |d| = {datum_modulus} but |a_0| = {model_modulus}")]
    InconsistentModulus {
        datum_modulus: f64,
        model_modulus: f64,
    },

    #[error("Unconverged: root estimate {epsilon} has residual {residual:e}")]
    Unconverged { epsilon: String, residual: f64 },

    #[error("InsufficientFrequencies: need at least 2 wavenumbers, got {0}")]
    InsufficientFrequencies(usize),

    #[error("DegenerateLinearTerm: a_1 must be non-zero")]
    DegenerateLinearTerm,

    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Short variant name, used as the machine-readable error kind in reports
    /// and CSV status columns.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidBasisIndex(_) => "InvalidBasisIndex",
            Error::InvalidWavenumber(_) => "InvalidWavenumber",
            Error::CoefficientCount { .. } => "CoefficientCount",
            Error::NonFiniteCoefficient(_) => "NonFiniteCoefficient",
            Error::DegenerateLeadingCoefficient { .. } => "DegenerateLeadingCoefficient",
            Error::InvalidRange { .. } => "InvalidRange",
            Error::TruthOutOfRange { .. } => "TruthOutOfRange",
            Error::InvalidNoise(_) => "InvalidNoise",
            Error::IncompatibleBasis(_) => "IncompatibleBasis",
            Error::NoSolutionPossible { .. } => "NoSolutionPossible",
            Error::EverywhereSolution => "EverywhereSolution",
            Error::InconsistentModulus { .. } => "InconsistentModulus",
            Error::Unconverged { .. } => "Unconverged",
            Error::InsufficientFrequencies(_) => "InsufficientFrequencies",
            Error::DegenerateLinearTerm => "DegenerateLinearTerm",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
