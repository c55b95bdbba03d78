use crate::error::{Error, Result};

/// Absolute tolerance used by every theorem checker for residuals and
/// inequality slacks.
pub const THEOREM_TOL: f64 = 1e-8;

/// Numerical tolerances shared by the classification and scaling routines.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ToleranceConfig {
    /// Frobenius-norm feasibility tolerance.
    pub residual_tol: f64,
    /// Relative singular-value cutoff for rank decisions.
    pub rank_tol: f64,
    /// Minimum coefficient counted as strictly positive.
    pub positivity_eps: f64,
}

impl ToleranceConfig {
    pub const DEFAULT_RANK_TOL: f64 = 1e-10;
    pub const DEFAULT_POSITIVITY_EPS: f64 = 1e-8;
    pub const RESIDUAL_TOL_PER_DIM: f64 = 1e-9;

    pub fn new(residual_tol: f64, rank_tol: f64, positivity_eps: f64) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(residual_tol) {
            return Err(Error::InvalidTolerance("residual_tol must be > 0"));
        }
        if !ok(rank_tol) {
            return Err(Error::InvalidTolerance("rank_tol must be > 0"));
        }
        if !ok(positivity_eps) {
            return Err(Error::InvalidTolerance("positivity_eps must be > 0"));
        }
        Ok(Self { residual_tol, rank_tol, positivity_eps })
    }

    /// Defaults for an ambient space of dimension `n`.
    pub fn for_dim(n: usize) -> Self {
        Self {
            residual_tol: Self::RESIDUAL_TOL_PER_DIM * (n.max(1) as f64),
            rank_tol: Self::DEFAULT_RANK_TOL,
            positivity_eps: Self::DEFAULT_POSITIVITY_EPS,
        }
    }

    pub fn with_residual_tol(self, residual_tol: f64) -> Result<Self> {
        Self::new(residual_tol, self.rank_tol, self.positivity_eps)
    }

    pub fn with_positivity_eps(self, positivity_eps: f64) -> Result<Self> {
        Self::new(self.residual_tol, self.rank_tol, positivity_eps)
    }
}
