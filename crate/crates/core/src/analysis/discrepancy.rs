use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::{refined_minima_of, ComparisonProblem};
use crate::tolerances::Tolerances;

pub const MIN_SCAN_SAMPLES: usize = 128;

/// A refined local minimum of `J(eps) = |K(eps)|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyMinimum {
    pub epsilon: f64,
    #[serde(rename = "J")]
    pub j: f64,
}

/// Sampled discrepancy functional with its refined local minima.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyCurve {
    pub epsilons: Vec<f64>,
    pub values: Vec<f64>,
    pub minima: Vec<DiscrepancyMinimum>,
}

impl DiscrepancyCurve {
    /// Minima at or below `threshold`, i.e. zeros of the comparison equation
    /// when `threshold = residual_tol^2`.
    pub fn zeros(&self, threshold: f64) -> Vec<f64> {
        self.minima
            .iter()
            .filter(|m| m.j <= threshold)
            .map(|m| m.epsilon)
            .collect()
    }
}

/// Samples `J(eps) = |E(eps) - d|^2` uniformly over the range and refines
/// every grid local minimum.
pub fn discrepancy_scan(problem: &ComparisonProblem, samples: usize) -> Result<DiscrepancyCurve> {
    if samples < MIN_SCAN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "samples must be at least {MIN_SCAN_SAMPLES}, got {samples}"
        )));
    }
    let (epsilons, magnitudes, refined) = refined_minima_of(problem, samples);
    let values = magnitudes.iter().map(|m| m * m).collect();

    let dedup_tol = Tolerances::default().dedup_tol;
    let mut minima: Vec<DiscrepancyMinimum> = Vec::with_capacity(refined.len());
    for (epsilon, magnitude) in refined {
        let m = DiscrepancyMinimum {
            epsilon,
            j: magnitude * magnitude,
        };
        match minima.last_mut() {
            Some(last) if (last.epsilon - epsilon).abs() < dedup_tol => {
                if m.j < last.j {
                    *last = m;
                }
            }
            _ => minima.push(m),
        }
    }
    Ok(DiscrepancyCurve {
        epsilons,
        values,
        minima,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{synthesize, ParameterRange, SeriesModel, SyntheticDatum};
    use crate::solver::{solve_mirror, solve_polynomial};
    use num_complex::Complex64;

    fn problem(model: SeriesModel, truth: f64) -> ComparisonProblem {
        let range = ParameterRange::default();
        let datum = synthesize(&model, truth, range, 0.0, 0).unwrap();
        ComparisonProblem::new(model, datum, range).unwrap()
    }

    #[test]
    fn quadratic_single_minimum() {
        let p = problem(SeriesModel::monomial(&[0.0, 1.0, 1.0]).unwrap(), 0.3);
        let curve = discrepancy_scan(&p, 512).unwrap();
        let zeros = curve.zeros(1e-20);
        let exact = solve_polynomial(&p, &Tolerances::default())
            .unwrap()
            .in_range_real();
        assert_eq!(zeros.len(), 1);
        assert!((zeros[0] - exact[0]).abs() < 1e-7);
        assert_eq!(curve.minima.len(), 1);
        assert!(curve.epsilons.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn mirror_three_minima() {
        let p = problem(
            SeriesModel::mirror(10.0, Complex64::new(-1.0, 0.0)).unwrap(),
            0.5,
        );
        let curve = discrepancy_scan(&p, 512).unwrap();
        let exact = solve_mirror(&p, 16, &Tolerances::default())
            .unwrap()
            .in_range_real();
        let zeros = curve.zeros(1e-20);
        assert_eq!(zeros.len(), 3);
        for (z, e) in zeros.iter().zip(&exact) {
            assert!((z - e).abs() < 1e-7);
        }
    }

    #[test]
    fn constant_estimator_flat_curve() {
        let range = ParameterRange::default();
        let datum = SyntheticDatum {
            value: Complex64::new(3.0, 0.0),
            truth: 0.5,
            wavenumber: None,
            noise_magnitude: 0.0,
        };
        let p =
            ComparisonProblem::new(SeriesModel::monomial(&[7.0]).unwrap(), datum, range).unwrap();
        let curve = discrepancy_scan(&p, 128).unwrap();
        assert!(curve.minima.is_empty());
        assert!(curve.values.iter().all(|&v| v == 16.0));
        assert!(discrepancy_scan(&p, 127).is_err());
    }
}
