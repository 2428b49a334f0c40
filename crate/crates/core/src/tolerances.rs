use serde::{Deserialize, Serialize};

/// Numerical tolerances shared by the solvers and analyses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Maximum |K(eps)| for a candidate to count as a root.
    pub residual_tol: f64,
    /// Candidates with |Im eps| above this are non-real.
    pub imag_tol: f64,
    /// Maximum |eps - truth| for the trivial solution.
    pub match_tol: f64,
    /// Candidates closer than this are merged.
    pub dedup_tol: f64,
    /// Matching width for the multi-frequency intersection.
    pub survivor_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual_tol: 1e-10,
            imag_tol: 1e-8,
            match_tol: 1e-6,
            dedup_tol: 1e-8,
            survivor_tol: 1e-6,
        }
    }
}

impl Tolerances {
    /// All fields finite and strictly positive.
    pub fn is_valid(&self) -> bool {
        [
            self.residual_tol,
            self.imag_tol,
            self.match_tol,
            self.dedup_tol,
            self.survivor_tol,
        ]
        .iter()
        .all(|t| t.is_finite() && *t > 0.0)
    }
}
