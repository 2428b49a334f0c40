use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{synthesize, BasisKind, ParameterRange, SeriesModel};
use crate::solver::{solve_polynomial, ComparisonProblem, SolutionSet};
use crate::tolerances::Tolerances;

/// Agreement required between the solver and the linear/quadratic closed form.
pub const CLOSED_FORM_AGREEMENT: f64 = 1e-9;

/// Outcome of one sweep row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    /// The best real root lies outside the range; delta is still reported.
    OutOfRange,
    NoRealRoot,
    /// The truth is zero, so the relative error is undefined.
    ZeroTruth,
    /// The solver disagrees with the closed form beyond tolerance.
    ClosedFormMismatch,
    /// A solver or synthesis error, by variant name.
    Error(String),
}

impl RowStatus {
    pub fn label(&self) -> &str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::OutOfRange => "out_of_range",
            RowStatus::NoRealRoot => "no_real_root",
            RowStatus::ZeroTruth => "zero_truth",
            RowStatus::ClosedFormMismatch => "closed_form_mismatch",
            RowStatus::Error(kind) => kind,
        }
    }
}

/// One row of a truncation-mismatch sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MismatchReport {
    pub phi: f64,
    pub estimator_order: usize,
    pub predictor_order: usize,
    pub epsilon_recovered: Option<f64>,
    pub epsilon_predicted: Option<f64>,
    pub delta_measured: Option<f64>,
    pub delta_predicted: Option<f64>,
    pub status: RowStatus,
}

/// Closed-form reconstruction for a linear estimator against a quadratic
/// predictor: `eps = phi + (a2/a1) phi^2` and `delta = |(a2/a1) phi|`.
pub fn mismatch_closed_form(a1: Complex64, a2: Complex64, truth: f64) -> Result<(Complex64, f64)> {
    if a1.norm() == 0.0 {
        return Err(Error::DegenerateLinearTerm);
    }
    let ratio = a2 / a1;
    Ok((truth + ratio * (truth * truth), (ratio * truth).norm()))
}

/// Inverts data from an order-`N` predictor with the order-`M` truncation of
/// the same series at every `phi` in `phi_grid`.
///
/// Each row reports the real root nearest the truth, preferring in-range
/// roots. Rows fail independently; their errors land in `status`. For
/// `(M, N) = (1, 2)` the closed-form prediction is filled in and checked.
pub fn mismatch_sweep(
    shared_coefficients: &[Complex64],
    estimator_order: usize,
    predictor_order: usize,
    phi_grid: &[f64],
    range: ParameterRange,
    tol: &Tolerances,
) -> Result<Vec<MismatchReport>> {
    if estimator_order > predictor_order || predictor_order + 1 > shared_coefficients.len() {
        return Err(Error::InvalidArgument(format!(
            "require M <= N <= {} (coefficient count - 1), got M = {estimator_order}, N = {predictor_order}",
            shared_coefficients.len().saturating_sub(1)
        )));
    }
    let predictor = SeriesModel::new(
        BasisKind::Monomial,
        shared_coefficients[..=predictor_order].to_vec(),
    )?;
    let estimator = predictor.truncate(estimator_order)?;
    let closed_form = (estimator_order, predictor_order) == (1, 2);

    Ok(phi_grid
        .iter()
        .map(|&phi| {
            let mut row = MismatchReport {
                phi,
                estimator_order,
                predictor_order,
                epsilon_recovered: None,
                epsilon_predicted: None,
                delta_measured: None,
                delta_predicted: None,
                status: RowStatus::Ok,
            };
            if closed_form {
                if let Ok((eps, delta)) =
                    mismatch_closed_form(shared_coefficients[1], shared_coefficients[2], phi)
                {
                    row.epsilon_predicted = (eps.im.abs() <= tol.imag_tol).then_some(eps.re);
                    row.delta_predicted = Some(delta);
                }
            }
            match solve_row(&predictor, &estimator, phi, range, tol) {
                Ok(set) => fill_measured(&mut row, &set, tol),
                Err(e) => row.status = RowStatus::Error(e.kind().to_string()),
            }
            row
        })
        .collect())
}

fn solve_row(
    predictor: &SeriesModel,
    estimator: &SeriesModel,
    phi: f64,
    range: ParameterRange,
    tol: &Tolerances,
) -> Result<SolutionSet> {
    let datum = synthesize(predictor, phi, range, 0.0, 0)?;
    let problem = ComparisonProblem::new(estimator.clone(), datum, range)?;
    solve_polynomial(&problem, tol)
}

fn fill_measured(row: &mut MismatchReport, set: &SolutionSet, tol: &Tolerances) {
    let phi = row.phi;
    let nearest = |in_range: bool| {
        set.candidates
            .iter()
            .filter(|c| c.is_real(tol.imag_tol) && c.is_in_range_real() == in_range)
            .map(|c| c.epsilon.re)
            .min_by(|a, b| (a - phi).abs().total_cmp(&(b - phi).abs()))
    };
    let (eps, in_range) = match nearest(true) {
        Some(e) => (e, true),
        None => match nearest(false) {
            Some(e) => (e, false),
            None => {
                row.status = RowStatus::NoRealRoot;
                return;
            }
        },
    };
    row.epsilon_recovered = Some(eps);
    if phi == 0.0 {
        row.status = RowStatus::ZeroTruth;
        return;
    }
    let delta = ((eps - phi) / phi).abs();
    row.delta_measured = Some(delta);
    row.status = if !in_range {
        RowStatus::OutOfRange
    } else {
        RowStatus::Ok
    };
    if let (Some(eps_p), Some(delta_p)) = (row.epsilon_predicted, row.delta_predicted) {
        if (eps - eps_p).abs() > CLOSED_FORM_AGREEMENT
            || (delta - delta_p).abs() > CLOSED_FORM_AGREEMENT
        {
            row.status = RowStatus::ClosedFormMismatch;
        }
    }
}
