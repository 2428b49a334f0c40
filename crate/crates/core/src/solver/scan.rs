//! Uniform grid sampling, local-minimum bracketing and golden-section refinement.

use crate::models::ParameterRange;

/// `(3 - sqrt 5) / 2`, the golden-section interior fraction.
const GOLDEN_FRACTION: f64 = 0.381_966_011_250_105_1;

const MAX_GOLDEN_ITERATIONS: usize = 200;

/// `n` equally spaced points from `range.lo()` to `range.hi()` inclusive.
pub fn uniform_grid(range: ParameterRange, n: usize) -> Vec<f64> {
    let step = range.width() / (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i == n - 1 {
                range.hi()
            } else {
                range.lo() + i as f64 * step
            }
        })
        .collect()
}

/// Brackets `[x_{i-1}, x_{i+1}]` around every grid local minimum.
///
/// An interior sample is a minimum when it is no larger than both neighbours
/// and strictly smaller than at least one. End samples count when they are
/// strictly below their single neighbour, so roots in the first or last cell
/// are not lost. Flat stretches produce nothing.
pub fn minimum_brackets(xs: &[f64], ys: &[f64]) -> Vec<(usize, f64, f64)> {
    let n = xs.len();
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    if ys[0] < ys[1] {
        out.push((0, xs[0], xs[1]));
    }
    for i in 1..n - 1 {
        let (l, c, r) = (ys[i - 1], ys[i], ys[i + 1]);
        if c <= l && c <= r && (c < l || c < r) {
            out.push((i, xs[i - 1], xs[i + 1]));
        }
    }
    if ys[n - 1] < ys[n - 2] {
        out.push((n - 1, xs[n - 2], xs[n - 1]));
    }
    out
}

/// Golden-section search for a minimum of `f` on `[a, b]`.
///
/// Stops when the bracket is narrower than `xtol` or `f` hits `stop_below`.
/// Returns the best abscissa seen and its value.
pub fn golden_section<F>(f: F, mut a: f64, mut b: f64, xtol: f64, stop_below: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut best = {
        let (fa, fb) = (f(a), f(b));
        if fa <= fb {
            (a, fa)
        } else {
            (b, fb)
        }
    };
    let mut x1 = a + GOLDEN_FRACTION * (b - a);
    let mut x2 = b - GOLDEN_FRACTION * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..MAX_GOLDEN_ITERATIONS {
        for (x, fx) in [(x1, f1), (x2, f2)] {
            if fx < best.1 {
                best = (x, fx);
            }
        }
        if b - a <= xtol || best.1 <= stop_below {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + GOLDEN_FRACTION * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - GOLDEN_FRACTION * (b - a);
            f2 = f(x2);
        }
    }
    best
}
