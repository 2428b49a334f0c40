//! Basis functions, truncated series models and synthetic data.
//!
//! A [`SeriesModel`] is the truncated expansion `sum_m a_m f_m(zeta)` used both
//! as the predictor (which synthesizes data) and as the estimator (which is
//! matched against the data). Two basis families are supported: monomials
//! `zeta^m`, and the single mirror-reflection mode `exp(-2 i k zeta)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Leading coefficients below this magnitude are treated as zero.
pub const LEADING_COEFFICIENT_FLOOR: f64 = 1e-14;

/// The family of basis functions `f_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasisKind {
    /// `f_m(zeta) = zeta^m`.
    Monomial,
    /// `f_0(zeta) = exp(-2 i k zeta)`, the reflection of a normally incident
    /// plane wave off a flat mirror at height `zeta`. Only `m = 0` exists.
    MirrorExponential { wavenumber: f64 },
}

impl BasisKind {
    pub fn mirror(wavenumber: f64) -> Result<Self> {
        if wavenumber.is_finite() && wavenumber > 0.0 {
            Ok(BasisKind::MirrorExponential { wavenumber })
        } else {
            Err(Error::InvalidWavenumber(wavenumber))
        }
    }

    pub fn wavenumber(&self) -> Option<f64> {
        match *self {
            BasisKind::Monomial => None,
            BasisKind::MirrorExponential { wavenumber } => Some(wavenumber),
        }
    }

    /// Lattice period `pi / k` of the mirror family.
    pub fn lattice_spacing(&self) -> Option<f64> {
        self.wavenumber().map(|k| PI / k)
    }
}

/// Evaluates `f_m(zeta)` for the given basis family.
pub fn evaluate_basis(kind: BasisKind, m: usize, zeta: f64) -> Result<Complex64> {
    match kind {
        BasisKind::Monomial => Ok(Complex64::new(powi(zeta, m), 0.0)),
        BasisKind::MirrorExponential { wavenumber } => {
            if m != 0 {
                return Err(Error::InvalidBasisIndex(m));
            }
            Ok(Complex64::from_polar(1.0, -2.0 * wavenumber * zeta))
        }
    }
}

fn powi(x: f64, m: usize) -> f64 {
    match i32::try_from(m) {
        Ok(m) => x.powi(m),
        Err(_) => x.powf(m as f64),
    }
}

/// Open parameter interval `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct ParameterRange {
    lo: f64,
    hi: f64,
}

impl ParameterRange {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::InvalidRange { lo, hi })
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Strict containment; the endpoints are excluded.
    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

impl Default for ParameterRange {
    fn default() -> Self {
        Self { lo: 0.0, hi: 1.0 }
    }
}

impl TryFrom<(f64, f64)> for ParameterRange {
    type Error = Error;

    fn try_from((lo, hi): (f64, f64)) -> Result<Self> {
        Self::new(lo, hi)
    }
}

impl From<ParameterRange> for (f64, f64) {
    fn from(r: ParameterRange) -> Self {
        (r.lo, r.hi)
    }
}

/// A truncated series `sum_{m=0}^{order} a_m f_m(zeta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesModel {
    basis: BasisKind,
    coefficients: Vec<Complex64>,
}

impl SeriesModel {
    /// Builds a model of order `coefficients.len() - 1`.
    pub fn new(basis: BasisKind, coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::CoefficientCount { order: 0, got: 0 });
        }
        if let BasisKind::MirrorExponential { wavenumber } = basis {
            BasisKind::mirror(wavenumber)?;
        }
        if let Some(i) = coefficients.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient(i));
        }
        let order = coefficients.len() - 1;
        match basis {
            BasisKind::MirrorExponential { .. } => {
                if order != 0 {
                    return Err(Error::InvalidBasisIndex(order));
                }
                check_leading(&coefficients)?;
            }
            BasisKind::Monomial => {
                if order >= 1 {
                    check_leading(&coefficients)?;
                }
            }
        }
        Ok(Self {
            basis,
            coefficients,
        })
    }

    /// Builds a model with an explicit order; the coefficient count must match.
    pub fn with_order(
        basis: BasisKind,
        order: usize,
        coefficients: Vec<Complex64>,
    ) -> Result<Self> {
        if coefficients.len() != order + 1 {
            return Err(Error::CoefficientCount {
                order,
                got: coefficients.len(),
            });
        }
        Self::new(basis, coefficients)
    }

    /// Real-coefficient monomial series, mostly a convenience for tests.
    pub fn monomial(coefficients: &[f64]) -> Result<Self> {
        Self::new(
            BasisKind::Monomial,
            coefficients
                .iter()
                .map(|&c| Complex64::new(c, 0.0))
                .collect(),
        )
    }

    /// Order-0 mirror model `a_0 exp(-2 i k zeta)`.
    pub fn mirror(wavenumber: f64, a0: Complex64) -> Result<Self> {
        Self::new(BasisKind::mirror(wavenumber)?, vec![a0])
    }

    /// The first `order + 1` coefficients of this model, same basis.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order + 1 > self.coefficients.len() {
            return Err(Error::CoefficientCount {
                order,
                got: self.coefficients.len(),
            });
        }
        Self::new(self.basis, self.coefficients[..=order].to_vec())
    }

    /// Same coefficients on a different mirror wavenumber.
    pub fn with_basis(&self, basis: BasisKind) -> Result<Self> {
        Self::new(basis, self.coefficients.clone())
    }

    pub fn basis(&self) -> BasisKind {
        self.basis
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn leading(&self) -> Complex64 {
        self.coefficients[self.order()]
    }

    /// `sum_m a_m f_m(zeta)`.
    pub fn evaluate(&self, zeta: f64) -> Complex64 {
        match self.basis {
            BasisKind::Monomial => self
                .coefficients
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * zeta + a),
            BasisKind::MirrorExponential { wavenumber } => {
                self.coefficients[0] * Complex64::from_polar(1.0, -2.0 * wavenumber * zeta)
            }
        }
    }
}

fn check_leading(coefficients: &[Complex64]) -> Result<()> {
    let order = coefficients.len() - 1;
    let magnitude = coefficients[order].norm();
    if magnitude < LEADING_COEFFICIENT_FLOOR {
        return Err(Error::DegenerateLeadingCoefficient { order, magnitude });
    }
    Ok(())
}

/// Evaluates a series model at `zeta`.
pub fn evaluate_series(model: &SeriesModel, zeta: f64) -> Complex64 {
    model.evaluate(zeta)
}

/// One complex observable produced by a predictor at a hidden parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticDatum {
    pub value: Complex64,
    pub truth: f64,
    pub wavenumber: Option<f64>,
    pub noise_magnitude: f64,
}

/// Synthesizes `d = Phi(truth) + eta` with `|eta| <= noise_magnitude`.
///
/// The perturbation has uniform phase and uniform magnitude in
/// `[0, noise_magnitude]`, drawn from a ChaCha stream seeded by `seed`. With
/// zero noise the generator is never touched and `d` is exactly `Phi(truth)`.
pub fn synthesize(
    predictor: &SeriesModel,
    truth: f64,
    range: ParameterRange,
    noise_magnitude: f64,
    seed: u64,
) -> Result<SyntheticDatum> {
    if !range.contains(truth) {
        return Err(Error::TruthOutOfRange {
            truth,
            lo: range.lo(),
            hi: range.hi(),
        });
    }
    if !noise_magnitude.is_finite() || noise_magnitude < 0.0 {
        return Err(Error::InvalidNoise(noise_magnitude));
    }
    let mut value = predictor.evaluate(truth);
    if noise_magnitude > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phase = rng.gen_range(0.0..2.0 * PI);
        let magnitude = rng.gen_range(0.0..=noise_magnitude);
        value += Complex64::from_polar(magnitude, phase);
    }
    Ok(SyntheticDatum {
        value,
        truth,
        wavenumber: predictor.basis().wavenumber(),
        noise_magnitude,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // exp(i theta) built from cos/sin, independent of Complex64::from_polar.
    fn cis(theta: f64) -> Complex64 {
        c(theta.cos(), theta.sin())
    }

    #[test]
    fn monomial_basis_values() {
        assert_eq!(
            evaluate_basis(BasisKind::Monomial, 3, 0.5).unwrap(),
            c(0.125, 0.0)
        );
        assert_eq!(
            evaluate_basis(BasisKind::Monomial, 0, 0.7).unwrap(),
            c(1.0, 0.0)
        );
    }

    #[test]
    fn mirror_basis_half_turn() {
        let v = evaluate_basis(BasisKind::mirror(PI).unwrap(), 0, 0.5).unwrap();
        let expected = cis(-PI);
        assert!((v - expected).norm() < 1e-15);
        assert!((v - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn mirror_basis_rejects_higher_modes() {
        let err = evaluate_basis(BasisKind::mirror(2.0).unwrap(), 1, 0.3).unwrap_err();
        assert_eq!(err, Error::InvalidBasisIndex(1));
    }

    #[test]
    fn series_examples() {
        let quad = SeriesModel::monomial(&[0.0, 1.0, 1.0]).unwrap();
        assert!((evaluate_series(&quad, 0.3) - c(0.39, 0.0)).norm() < 1e-15);

        let constant = SeriesModel::new(BasisKind::Monomial, vec![c(5.0, 2.0)]).unwrap();
        assert_eq!(evaluate_series(&constant, 0.123), c(5.0, 2.0));

        let mirror = SeriesModel::mirror(PI, c(-1.0, 0.0)).unwrap();
        let v = evaluate_series(&mirror, 0.25);
        assert!((v - c(0.0, 1.0)).norm() < 1e-15);
        assert!((v + cis(-PI / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn model_invariants() {
        assert!(matches!(
            SeriesModel::monomial(&[1.0, 0.0]),
            Err(Error::DegenerateLeadingCoefficient { order: 1, .. })
        ));
        assert!(matches!(
            SeriesModel::mirror(1.0, c(0.0, 0.0)),
            Err(Error::DegenerateLeadingCoefficient { .. })
        ));
        assert_eq!(
            SeriesModel::new(
                BasisKind::mirror(1.0).unwrap(),
                vec![c(1.0, 0.0), c(1.0, 0.0)]
            ),
            Err(Error::InvalidBasisIndex(1))
        );
        assert!(matches!(
            BasisKind::mirror(-1.0),
            Err(Error::InvalidWavenumber(_))
        ));
        assert!(matches!(
            BasisKind::mirror(f64::INFINITY),
            Err(Error::InvalidWavenumber(_))
        ));
        assert!(matches!(
            SeriesModel::monomial(&[f64::NAN, 1.0]),
            Err(Error::NonFiniteCoefficient(0))
        ));
        assert!(matches!(
            SeriesModel::with_order(BasisKind::Monomial, 2, vec![c(1.0, 0.0)]),
            Err(Error::CoefficientCount { order: 2, got: 1 })
        ));
        // A constant monomial series may be zero.
        assert!(SeriesModel::monomial(&[0.0]).is_ok());
    }

    #[test]
    fn range_is_open() {
        let r = ParameterRange::default();
        assert!(!r.contains(0.0));
        assert!(!r.contains(1.0));
        assert!(r.contains(0.5));
        assert!(ParameterRange::new(1.0, 0.0).is_err());
        assert!(ParameterRange::new(0.5, 0.5).is_err());
    }

    #[test]
    fn synthesize_examples() {
        let identity = SeriesModel::monomial(&[0.0, 1.0]).unwrap();
        let d = synthesize(&identity, 0.42, ParameterRange::default(), 0.0, 7).unwrap();
        assert_eq!(d.value, c(0.42, 0.0));
        assert_eq!(d.wavenumber, None);

        let mirror = SeriesModel::mirror(10.0, c(-1.0, 0.0)).unwrap();
        let d = synthesize(&mirror, 0.5, ParameterRange::default(), 0.0, 7).unwrap();
        assert!((d.value + cis(-10.0)).norm() < 1e-15);
        assert_eq!(d.wavenumber, Some(10.0));

        assert!(matches!(
            synthesize(&identity, 1.0, ParameterRange::default(), 0.0, 0),
            Err(Error::TruthOutOfRange { .. })
        ));
    }

    #[test]
    fn noise_is_bounded_and_replayable() {
        let model = SeriesModel::monomial(&[0.1, 1.0, -0.5]).unwrap();
        let r = ParameterRange::default();
        let clean = model.evaluate(0.3);
        for seed in 0..50 {
            let a = synthesize(&model, 0.3, r, 0.01, seed).unwrap();
            let b = synthesize(&model, 0.3, r, 0.01, seed).unwrap();
            assert_eq!(a.value.re.to_bits(), b.value.re.to_bits());
            assert_eq!(a.value.im.to_bits(), b.value.im.to_bits());
            assert!((a.value - clean).norm() <= 0.01 + 1e-15);
        }
        assert!(synthesize(&model, 0.3, r, -1.0, 0).is_err());
    }
}
