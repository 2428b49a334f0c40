//! A laboratory for the scalar inverse problem: recover one real parameter
//! from one complex datum by solving the comparison equation
//! `E(eps) - d = 0`, where the datum `d` was synthesized by a predictor model.
//!
//! The crate enumerates every candidate solution rather than stopping at the
//! first one, which makes the non-uniqueness of "inverse crime" setups
//! (same model for synthesis and inversion) visible:
//!
//! * [`models`] - basis functions, truncated series models and data synthesis.
//! * [`solver`] - exact polynomial root enumeration, the closed-form mirror
//!   lattice and a grid-scan fallback, plus candidate classification.
//! * [`analysis`] - discrepancy scans, multi-frequency ghost elimination and
//!   truncation-mismatch error studies.
//! * [`experiment`] - declarative configs, reports, CSV and SVG output.

pub mod analysis;
pub mod error;
pub mod experiment;
pub mod models;
pub mod solver;
pub mod tolerances;

pub use error::{Error, Result};
pub use models::{BasisKind, ParameterRange, SeriesModel, SyntheticDatum};
pub use num_complex::Complex64;
pub use solver::{Classification, ComparisonProblem, SolutionCandidate, SolutionSet, SolveMethod};
pub use tolerances::Tolerances;
