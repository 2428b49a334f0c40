use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::models::ParameterRange;
use crate::tolerances::Tolerances;

/// What a root of the comparison equation means relative to the truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    /// The correct inverse, `eps = truth`.
    Trivial,
    /// A real, in-range root other than the truth.
    Ghost,
    /// A real root outside the open parameter range (endpoints included).
    OutOfRange,
    /// A root with a significant imaginary part.
    NonReal,
}

/// An unclassified root as produced by one of the solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootEstimate {
    pub epsilon: Complex64,
    pub residual: f64,
    pub multiplicity: usize,
    pub lattice_index: Option<i64>,
}

/// One classified root of the comparison equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolutionCandidate {
    pub epsilon: Complex64,
    /// `|K(epsilon)|`.
    pub residual: f64,
    pub classification: Classification,
    /// Number of solver roots merged into this candidate.
    pub multiplicity: usize,
    /// Offset `n` from the principal mirror solution, `eps_0 + n pi / k`.
    pub lattice_index: Option<i64>,
}

impl SolutionCandidate {
    pub fn is_real(&self, imag_tol: f64) -> bool {
        self.epsilon.im.abs() <= imag_tol
    }

    /// Trivial or ghost: a real root inside the range.
    pub fn is_in_range_real(&self) -> bool {
        matches!(
            self.classification,
            Classification::Trivial | Classification::Ghost
        )
    }
}

/// Classifies root estimates against the truth and the range.
///
/// At most one candidate is `Trivial`: among real estimates within
/// `match_tol` of the truth, the nearest wins, ties going to the smaller
/// residual. Output is sorted by real part, then imaginary part.
pub fn classify(
    estimates: &[RootEstimate],
    truth: f64,
    range: ParameterRange,
    tol: &Tolerances,
) -> Vec<SolutionCandidate> {
    let is_real = |e: &RootEstimate| e.epsilon.im.abs() <= tol.imag_tol;
    let distance = |e: &RootEstimate| (e.epsilon - truth).norm();

    let trivial = estimates
        .iter()
        .enumerate()
        .filter(|(_, e)| is_real(e) && distance(e) <= tol.match_tol)
        .min_by(|(_, a), (_, b)| {
            distance(a)
                .total_cmp(&distance(b))
                .then(a.residual.total_cmp(&b.residual))
        })
        .map(|(i, _)| i);

    let mut out: Vec<SolutionCandidate> = estimates
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let classification = if Some(i) == trivial {
                Classification::Trivial
            } else if !is_real(e) {
                Classification::NonReal
            } else if !range.contains(e.epsilon.re) {
                Classification::OutOfRange
            } else {
                Classification::Ghost
            };
            SolutionCandidate {
                epsilon: e.epsilon,
                residual: e.residual,
                classification,
                multiplicity: e.multiplicity,
                lattice_index: e.lattice_index,
            }
        })
        .collect();
    out.sort_by(|a, b| {
        a.epsilon
            .re
            .total_cmp(&b.epsilon.re)
            .then(a.epsilon.im.total_cmp(&b.epsilon.im))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Classification::*;

    fn est(re: f64, im: f64) -> RootEstimate {
        RootEstimate {
            epsilon: Complex64::new(re, im),
            residual: 0.0,
            multiplicity: 1,
            lattice_index: None,
        }
    }

    fn classes(v: &[SolutionCandidate]) -> Vec<Classification> {
        v.iter().map(|c| c.classification).collect()
    }

    #[test]
    fn quadratic_pair() {
        let out = classify(
            &[est(0.3, 0.0), est(-1.3, 0.0)],
            0.3,
            ParameterRange::default(),
            &Tolerances::default(),
        );
        assert_eq!(out[0].epsilon.re, -1.3);
        assert_eq!(classes(&out), vec![OutOfRange, Trivial]);
    }

    #[test]
    fn mirror_lattice() {
        let out = classify(
            &[est(0.18584, 0.0), est(0.5, 0.0), est(0.81416, 0.0)],
            0.5,
            ParameterRange::default(),
            &Tolerances::default(),
        );
        assert_eq!(classes(&out), vec![Ghost, Trivial, Ghost]);
    }

    #[test]
    fn non_real() {
        let out = classify(
            &[est(0.5, 0.2)],
            0.5,
            ParameterRange::default(),
            &Tolerances::default(),
        );
        assert_eq!(classes(&out), vec![NonReal]);
    }

    #[test]
    fn endpoints_are_out_of_range() {
        let out = classify(
            &[est(0.0, 0.0), est(1.0, 0.0)],
            0.5,
            ParameterRange::default(),
            &Tolerances::default(),
        );
        assert_eq!(classes(&out), vec![OutOfRange, OutOfRange]);
    }

    #[test]
    fn single_trivial_nearest_then_smallest_residual() {
        let mut a = est(0.5 + 4e-7, 0.0);
        a.residual = 1e-12;
        let mut b = est(0.5 - 2e-7, 0.0);
        b.residual = 1e-11;
        let out = classify(
            &[a, b],
            0.5,
            ParameterRange::default(),
            &Tolerances::default(),
        );
        assert_eq!(classes(&out), vec![Trivial, Ghost]);

        let mut c = est(0.5 + 2e-7, 0.0);
        c.residual = 1e-13;
        let out = classify(
            &[b, c],
            0.5,
            ParameterRange::default(),
            &Tolerances::default(),
        );
        assert_eq!(classes(&out), vec![Ghost, Trivial]);
    }
}
