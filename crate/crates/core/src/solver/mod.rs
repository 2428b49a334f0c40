//! Solvers for the comparison equation `K(eps) = E(eps) - d = 0`.
//!
//! Three routes are provided:
//!
//! * [`solve_polynomial`] enumerates every complex root of a monomial
//!   estimator with an all-roots polynomial solver.
//! * [`solve_mirror`] writes down the closed-form lattice
//!   `eps_n = eps_0 + n pi / k` for the mirror-reflection estimator.
//! * [`solve_grid`] scans `|K|` over the range and refines each local minimum
//!   by golden-section search. It works for any estimator but only finds real
//!   roots, and serves as an independent cross-check of the other two.

mod classify;
mod roots;
pub mod scan;

pub use classify::{classify, Classification, RootEstimate, SolutionCandidate};
pub use roots::all_roots;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{
    BasisKind, ParameterRange, SeriesModel, SyntheticDatum, LEADING_COEFFICIENT_FLOOR,
};
use crate::tolerances::Tolerances;

/// Default number of lattice members enumerated on each side of `eps_0`.
pub const DEFAULT_LATTICE_BOUND: u32 = 16;

/// Default sample count for [`solve_grid`].
pub const DEFAULT_GRID_POINTS: usize = 4096;

/// Minimum sample count accepted by [`solve_grid`].
pub const MIN_GRID_POINTS: usize = 64;

/// Golden-section bracket width at which refinement stops.
const REFINE_XTOL: f64 = 1e-12;

/// An estimator matched against a datum over a parameter range.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonProblem {
    estimator: SeriesModel,
    datum: SyntheticDatum,
    range: ParameterRange,
}

impl ComparisonProblem {
    /// Fails with `IncompatibleBasis` when a mirror estimator is paired with
    /// a mirror datum taken at a different wavenumber.
    pub fn new(
        estimator: SeriesModel,
        datum: SyntheticDatum,
        range: ParameterRange,
    ) -> Result<Self> {
        if let (Some(k_est), Some(k_dat)) = (estimator.basis().wavenumber(), datum.wavenumber) {
            if k_est != k_dat {
                return Err(Error::IncompatibleBasis(format!(
                    "estimator wavenumber {k_est} differs from datum wavenumber {k_dat}"
                )));
            }
        }
        Ok(Self {
            estimator,
            datum,
            range,
        })
    }

    pub fn estimator(&self) -> &SeriesModel {
        &self.estimator
    }

    pub fn datum(&self) -> &SyntheticDatum {
        &self.datum
    }

    pub fn range(&self) -> ParameterRange {
        self.range
    }

    /// `K(eps)` for real `eps`.
    pub fn discrepancy(&self, epsilon: f64) -> Complex64 {
        self.estimator.evaluate(epsilon) - self.datum.value
    }
}

/// Which route produced a solution set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveMethod {
    PolynomialExact,
    MirrorClosedForm,
    GridRefine,
}

/// All classified roots of one comparison equation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSet {
    /// Sorted by real part ascending.
    pub candidates: Vec<SolutionCandidate>,
    pub tolerances: Tolerances,
    pub method: SolveMethod,
}

impl SolutionSet {
    pub fn trivial(&self) -> Option<&SolutionCandidate> {
        self.candidates
            .iter()
            .find(|c| c.classification == Classification::Trivial)
    }

    pub fn count(&self, class: Classification) -> usize {
        self.candidates
            .iter()
            .filter(|c| c.classification == class)
            .count()
    }

    /// Real parts of the trivial and ghost candidates, ascending.
    pub fn in_range_real(&self) -> Vec<f64> {
        self.candidates
            .iter()
            .filter(|c| c.is_in_range_real())
            .map(|c| c.epsilon.re)
            .collect()
    }

    /// Sum of multiplicities.
    pub fn root_count(&self) -> usize {
        self.candidates.iter().map(|c| c.multiplicity).sum()
    }
}

/// Solves a monomial comparison equation `sum_m a_m eps^m - d = 0` exactly.
///
/// Returns all `M` complex roots (merged within `dedup_tol`, multiplicities
/// kept). A constant estimator either never or always matches the datum,
/// reported as `NoSolutionPossible` or `EverywhereSolution`.
pub fn solve_polynomial(problem: &ComparisonProblem, tol: &Tolerances) -> Result<SolutionSet> {
    let estimator = &problem.estimator;
    if estimator.basis() != BasisKind::Monomial {
        return Err(Error::IncompatibleBasis(
            "polynomial solver requires a monomial estimator".into(),
        ));
    }
    let d = problem.datum.value;
    let order = estimator.order();
    if order == 0 {
        let a0 = estimator.coefficients()[0];
        return if (a0 - d).norm() <= tol.residual_tol {
            Err(Error::EverywhereSolution)
        } else {
            Err(Error::NoSolutionPossible {
                estimator: a0.to_string(),
                datum: d.to_string(),
            })
        };
    }
    let magnitude = estimator.leading().norm();
    if magnitude < LEADING_COEFFICIENT_FLOOR {
        return Err(Error::DegenerateLeadingCoefficient { order, magnitude });
    }

    let mut poly = estimator.coefficients().to_vec();
    poly[0] -= d;
    let raw = all_roots(&poly);

    let mut estimates = Vec::new();
    for (epsilon, multiplicity) in merge_close(&raw, tol.dedup_tol) {
        let residual = roots::eval(&poly, epsilon).norm();
        // Far-out roots cannot be evaluated below the rounding floor.
        let allowed = tol
            .residual_tol
            .max(roots::evaluation_floor(&poly, epsilon));
        if residual.is_nan() || residual > allowed {
            return Err(Error::Unconverged {
                epsilon: epsilon.to_string(),
                residual,
            });
        }
        estimates.push(RootEstimate {
            epsilon,
            residual,
            multiplicity,
            lattice_index: None,
        });
    }

    Ok(SolutionSet {
        candidates: classify(&estimates, problem.datum.truth, problem.range, tol),
        tolerances: *tol,
        method: SolveMethod::PolynomialExact,
    })
}

/// Groups roots closer than `dedup_tol` (single linkage) and returns each
/// cluster's mean with its size.
fn merge_close(roots: &[Complex64], dedup_tol: f64) -> Vec<(Complex64, usize)> {
    let mut cluster: Vec<usize> = (0..roots.len()).collect();
    for i in 0..roots.len() {
        for j in 0..i {
            if (roots[i] - roots[j]).norm() < dedup_tol {
                let (from, to) = (cluster[i], cluster[j]);
                for c in cluster.iter_mut() {
                    if *c == from {
                        *c = to;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for id in 0..roots.len() {
        let members: Vec<Complex64> = roots
            .iter()
            .zip(&cluster)
            .filter(|(_, &c)| c == id)
            .map(|(&r, _)| r)
            .collect();
        if !members.is_empty() {
            let n = members.len();
            out.push((members.iter().sum::<Complex64>() / n as f64, n));
        }
    }
    out
}

/// Enumerates the mirror solution lattice `eps_n = eps_0 + n pi / k` for
/// `|n| <= lattice_bound`, where `eps_0 = -arg(d / a_0) / (2k)`.
///
/// Every lattice member is returned, in range or not, so that ghosts outside
/// the range stay visible.
pub fn solve_mirror(
    problem: &ComparisonProblem,
    lattice_bound: u32,
    tol: &Tolerances,
) -> Result<SolutionSet> {
    let BasisKind::MirrorExponential { wavenumber: k } = problem.estimator.basis() else {
        return Err(Error::IncompatibleBasis(
            "mirror solver requires a mirror-exponential estimator".into(),
        ));
    };
    if lattice_bound == 0 {
        return Err(Error::InvalidArgument(
            "lattice_bound must be positive".into(),
        ));
    }
    let a0 = problem.estimator.coefficients()[0];
    let d = problem.datum.value;
    if (d.norm() - a0.norm()).abs() > tol.residual_tol {
        return Err(Error::InconsistentModulus {
            datum_modulus: d.norm(),
            model_modulus: a0.norm(),
        });
    }

    let principal = -(d / a0).arg() / (2.0 * k);
    let spacing = PI / k;
    let bound = i64::from(lattice_bound);
    let mut estimates = Vec::with_capacity(2 * lattice_bound as usize + 1);
    for n in -bound..=bound {
        let epsilon = principal + n as f64 * spacing;
        let residual = problem.discrepancy(epsilon).norm();
        // Phase rounding grows with |k eps|.
        let floor = 8.0 * f64::EPSILON * (a0.norm() + d.norm()) * (1.0 + 2.0 * k * epsilon.abs());
        if residual.is_nan() || residual > tol.residual_tol + floor {
            return Err(Error::Unconverged {
                epsilon: epsilon.to_string(),
                residual,
            });
        }
        estimates.push(RootEstimate {
            epsilon: Complex64::new(epsilon, 0.0),
            residual,
            multiplicity: 1,
            lattice_index: Some(n),
        });
    }

    Ok(SolutionSet {
        candidates: classify(&estimates, problem.datum.truth, problem.range, tol),
        tolerances: *tol,
        method: SolveMethod::MirrorClosedForm,
    })
}

/// Finds the real in-range roots of any comparison equation by scanning
/// `|K|` on `grid_points` uniform samples and refining each local minimum by
/// golden-section search. Refined minima with `|K| > residual_tol` are
/// discarded, so an equation without real roots yields an empty set.
pub fn solve_grid(
    problem: &ComparisonProblem,
    grid_points: usize,
    tol: &Tolerances,
) -> Result<SolutionSet> {
    if grid_points < MIN_GRID_POINTS {
        return Err(Error::InvalidArgument(format!(
            "grid_points must be at least {MIN_GRID_POINTS}, got {grid_points}"
        )));
    }
    let estimates: Vec<RootEstimate> = refined_minima(problem, grid_points)
        .into_iter()
        .filter(|&(_, residual)| residual <= tol.residual_tol)
        .map(|(epsilon, residual)| RootEstimate {
            epsilon: Complex64::new(epsilon, 0.0),
            residual,
            multiplicity: 1,
            lattice_index: None,
        })
        .collect();
    let estimates = dedup_real(estimates, tol.dedup_tol);

    Ok(SolutionSet {
        candidates: classify(&estimates, problem.datum.truth, problem.range, tol),
        tolerances: *tol,
        method: SolveMethod::GridRefine,
    })
}

/// Every grid local minimum of `|K|`, refined, as `(eps, |K(eps)|)`.
pub(crate) fn refined_minima(problem: &ComparisonProblem, samples: usize) -> Vec<(f64, f64)> {
    refined_minima_of(problem, samples).2
}

/// Grid abscissae, sampled `|K|`, and the refined minima.
pub(crate) fn refined_minima_of(
    problem: &ComparisonProblem,
    samples: usize,
) -> (Vec<f64>, Vec<f64>, Vec<(f64, f64)>) {
    let xs = scan::uniform_grid(problem.range, samples);
    let ys: Vec<f64> = xs.iter().map(|&x| problem.discrepancy(x).norm()).collect();
    let refined = scan::minimum_brackets(&xs, &ys)
        .into_iter()
        .map(|(_, a, b)| {
            scan::golden_section(|x| problem.discrepancy(x).norm(), a, b, REFINE_XTOL, 0.0)
        })
        .collect();
    (xs, ys, refined)
}

/// Keeps the smaller-residual estimate of any pair closer than `dedup_tol`.
fn dedup_real(mut estimates: Vec<RootEstimate>, dedup_tol: f64) -> Vec<RootEstimate> {
    estimates.sort_by(|a, b| a.epsilon.re.total_cmp(&b.epsilon.re));
    let mut out: Vec<RootEstimate> = Vec::with_capacity(estimates.len());
    for e in estimates {
        match out.last_mut() {
            Some(last) if (e.epsilon - last.epsilon).norm() < dedup_tol => {
                if e.residual < last.residual {
                    *last = e;
                }
            }
            _ => out.push(e),
        }
    }
    out
}
