use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{synthesize, BasisKind, ParameterRange, SeriesModel};
use crate::solver::{solve_mirror, ComparisonProblem, SolutionSet, DEFAULT_LATTICE_BOUND};
use crate::tolerances::Tolerances;

/// Solution set for one probing wavenumber.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencySolution {
    pub wavenumber: f64,
    pub solutions: SolutionSet,
}

/// Per-wavenumber mirror lattices and the values common to all of them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiFrequencyResult {
    pub per_frequency: Vec<FrequencySolution>,
    /// Ascending; each entry is the mean of one matched cluster.
    pub intersection: Vec<f64>,
    pub survivor_tolerance: f64,
}

/// Locates the mirror from several wavenumbers.
///
/// For each `k` a noiseless datum is synthesized with the template's
/// coefficients, its lattice is enumerated, and the in-range real candidates
/// of all lattices are intersected. The truth survives for any set of
/// wavenumbers; ghosts survive only when two lattices share a point inside
/// the range, which happens for commensurate spacings `pi / k`.
pub fn multi_frequency_disambiguate(
    estimator_template: &SeriesModel,
    truth: f64,
    wavenumbers: &[f64],
    range: ParameterRange,
    tol: &Tolerances,
) -> Result<MultiFrequencyResult> {
    if wavenumbers.len() < 2 {
        return Err(Error::InsufficientFrequencies(wavenumbers.len()));
    }
    if !matches!(
        estimator_template.basis(),
        BasisKind::MirrorExponential { .. }
    ) {
        return Err(Error::IncompatibleBasis(
            "multi-frequency disambiguation requires a mirror-exponential template".into(),
        ));
    }
    for (i, &k) in wavenumbers.iter().enumerate() {
        BasisKind::mirror(k)?;
        if wavenumbers[..i].contains(&k) {
            return Err(Error::InvalidArgument(format!(
                "wavenumber {k} is repeated"
            )));
        }
    }
    let k_max = wavenumbers.iter().copied().fold(0.0, f64::max);
    if tol.survivor_tol >= 0.1 * PI / k_max {
        return Err(Error::InvalidArgument(format!(
            "survivor tolerance {} must be below 0.1 pi / k_max = {}",
            tol.survivor_tol,
            0.1 * PI / k_max
        )));
    }

    let mut per_frequency = Vec::with_capacity(wavenumbers.len());
    for &k in wavenumbers {
        let model = estimator_template.with_basis(BasisKind::mirror(k)?)?;
        let datum = synthesize(&model, truth, range, 0.0, 0)?;
        let problem = ComparisonProblem::new(model, datum, range)?;
        // Enough lattice members to cover the range from any principal value.
        let needed = (range.hi().abs().max(range.lo().abs()) * k / PI).ceil() as u32 + 2;
        let solutions = solve_mirror(&problem, DEFAULT_LATTICE_BOUND.max(needed), tol)?;
        per_frequency.push(FrequencySolution {
            wavenumber: k,
            solutions,
        });
    }

    let sets: Vec<Vec<f64>> = per_frequency
        .iter()
        .map(|f| f.solutions.in_range_real())
        .collect();
    let intersection = intersect(&sets, tol.survivor_tol);

    Ok(MultiFrequencyResult {
        per_frequency,
        intersection,
        survivor_tolerance: tol.survivor_tol,
    })
}

/// Values of `sets[0]` matched within `width` in every other set, each
/// replaced by the mean of its matches; overlapping survivors are merged.
fn intersect(sets: &[Vec<f64>], width: f64) -> Vec<f64> {
    let Some((first, rest)) = sets.split_first() else {
        return Vec::new();
    };
    let mut survivors: Vec<f64> = first
        .iter()
        .filter_map(|&x| {
            let mut cluster = vec![x];
            for set in rest {
                let nearest = set
                    .iter()
                    .copied()
                    .min_by(|a, b| (a - x).abs().total_cmp(&(b - x).abs()))?;
                if (nearest - x).abs() > width {
                    return None;
                }
                cluster.push(nearest);
            }
            Some(cluster.iter().sum::<f64>() / cluster.len() as f64)
        })
        .collect();
    survivors.sort_by(f64::total_cmp);
    survivors.dedup_by(|b, a| (*b - *a).abs() <= width);
    survivors
}
