//! All-roots polynomial solver (Aberth-Ehrlich simultaneous iteration).

use num_complex::Complex64;

const MAX_ITERATIONS: usize = 500;

/// Horner evaluation of `p(z) = sum_i c_i z^i` and its derivative.
pub(crate) fn eval_with_derivative(
    coefficients: &[Complex64],
    z: Complex64,
) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coefficients.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub(crate) fn eval(coefficients: &[Complex64], z: Complex64) -> Complex64 {
    coefficients
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Rounding-error bound for Horner evaluation at `z`: `4 n eps sum |c_i| |z|^i`.
pub(crate) fn evaluation_floor(coefficients: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let magnitude = coefficients
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * r + c.norm());
    4.0 * coefficients.len() as f64 * f64::EPSILON * magnitude
}

/// Fujiwara's bound on root magnitude.
fn root_radius_bound(coefficients: &[Complex64]) -> f64 {
    let n = coefficients.len() - 1;
    let lead = coefficients[n].norm();
    (1..=n)
        .map(|j| {
            let c = coefficients[n - j].norm() / lead;
            let c = if j == n { c / 2.0 } else { c };
            2.0 * c.powf(1.0 / j as f64)
        })
        .fold(0.0, f64::max)
}

/// Finds all `n` complex roots of the degree-`n` polynomial
/// `sum_i coefficients[i] z^i`, with multiplicity. The leading coefficient
/// must be non-zero.
///
/// Every root gets one Newton correction after the simultaneous iteration
/// converges; the correction is kept only when it lowers `|p|`.
pub fn all_roots(coefficients: &[Complex64]) -> Vec<Complex64> {
    let n = coefficients.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![-coefficients[0] / coefficients[1]];
    }

    let radius = match root_radius_bound(coefficients) {
        r if r > 0.0 && r.is_finite() => 0.5 * r,
        _ => 1.0,
    };
    // Off-axis starting circle so conjugate pairs are not started symmetric.
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            Complex64::from_polar(
                radius,
                2.0 * std::f64::consts::PI * j as f64 / n as f64 + 0.4,
            )
        })
        .collect();
    let mut converged = vec![false; n];

    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for j in 0..n {
            if converged[j] {
                continue;
            }
            let (p, dp) = eval_with_derivative(coefficients, z[j]);
            if p.norm() <= evaluation_floor(coefficients, z[j]) {
                converged[j] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&l| l != j)
                .map(|l| (z[j] - z[l]).inv())
                .sum();
            let mut step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                step = if ratio.is_finite() {
                    ratio
                } else {
                    Complex64::new(radius * 1e-3, radius * 1e-3)
                };
            }
            z[j] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[j].norm().max(f64::MIN_POSITIVE) {
                converged[j] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }

    for root in z.iter_mut() {
        let (p, dp) = eval_with_derivative(coefficients, *root);
        let candidate = *root - p / dp;
        if candidate.is_finite() && eval(coefficients, candidate).norm() < p.norm() {
            *root = candidate;
        }
    }
    z
}
