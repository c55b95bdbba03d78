use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fusion::FusionFrame;
use crate::numerics::{maxmin_lp, nnls, norm, sub_vec, DenseMatrix};
use crate::tolerance::ToleranceConfig;

/// Verdict of the weight-scaling problem `sum c_i P_i = I`, `c_i >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ScalingStatus {
    /// A solution with every `c_i >= positivity_eps` exists.
    StrictlyScalable,
    /// The system is solvable with `c >= 0`, but even the max-min solution
    /// has a coefficient below `positivity_eps`.
    ScalableWithZeroWeights,
    /// The global NNLS residual exceeds `residual_tol`.
    Infeasible,
}

impl ScalingStatus {
    pub fn is_strict(self) -> bool {
        self == Self::StrictlyScalable
    }
}

/// How the reported coefficients were chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Selection {
    /// Uniform `c_i = w_i^2 / A` for a tight frame.
    TightShortcut,
    /// Maximizer of `min c_i` over the solution polytope.
    MaxMin,
    /// The NNLS minimizer itself.
    Nnls,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScalingSolution {
    pub status: ScalingStatus,
    /// `c_i = (w_i g_i)^2`.
    pub coefficients: Vec<f64>,
    /// `g_i = sqrt(c_i) / w_i`, `None` where `c_i = 0`.
    pub gamma: Vec<Option<f64>>,
    /// `||sum c_i P_i - I||_F` at the reported coefficients.
    pub residual: f64,
    pub min_coefficient: f64,
    /// Global minimum of the NNLS problem; equals `residual` when infeasible.
    pub nnls_residual: f64,
    pub selection: Selection,
    pub notes: Vec<String>,
}

impl ScalingSolution {
    /// Coefficient of item `i`.
    pub fn c(&self, i: usize) -> f64 {
        self.coefficients[i]
    }

    /// `gamma` with zeros in place of undefined entries.
    pub fn gamma_or_zero(&self) -> Vec<f64> {
        self.gamma.iter().map(|g| g.unwrap_or(0.0)).collect()
    }
}

/// `sum_i c_i vec(P_i) = vec(I)` as a dense `n(n+1)/2 x k` system.
///
/// Each projector is vectorized by its upper triangle with off-diagonal
/// entries multiplied by `sqrt 2`, so the Euclidean norm of a residual
/// equals the Frobenius norm of the matrix residual.
pub fn projector_system(frame: &FusionFrame) -> (DenseMatrix, Vec<f64>) {
    let n = frame.ambient_dim();
    let m = n * (n + 1) / 2;
    let k = frame.len();
    let mut a = DenseMatrix::zeros(m, k);
    for (col, it) in frame.items().iter().enumerate() {
        let p = it.subspace.projector();
        let v = vectorize(&p);
        a.set_column(col, &v);
    }
    (a, vectorize(&DenseMatrix::identity(n)))
}

fn vectorize(p: &DenseMatrix) -> Vec<f64> {
    let n = p.rows();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        out.push(p[(i, i)]);
        for j in (i + 1)..n {
            out.push(core::f64::consts::SQRT_2 * p[(i, j)]);
        }
    }
    out
}

/// `||sum c_i P_i - I||_F`.
pub fn coefficient_residual(frame: &FusionFrame, c: &[f64]) -> Result<f64> {
    if c.len() != frame.len() {
        return Err(Error::LengthMismatch { expected: frame.len(), found: c.len() });
    }
    let n = frame.ambient_dim();
    let mut s = DenseMatrix::zeros(n, n);
    for (it, &ci) in frame.items().iter().zip(c) {
        s.axpy(ci, &it.subspace.projector())?;
    }
    s.distance(&DenseMatrix::identity(n))
}

/// `||sum (w_i g_i)^2 P_i - I||_F` for strictly positive `g`.
pub fn verify_scaling(frame: &FusionFrame, gamma: &[f64]) -> Result<f64> {
    if gamma.len() != frame.len() {
        return Err(Error::LengthMismatch { expected: frame.len(), found: gamma.len() });
    }
    if let Some(&g) = gamma.iter().find(|g| !(**g > 0.0 && g.is_finite())) {
        return Err(Error::NonpositiveGamma(g));
    }
    let c: Vec<f64> = frame.items().iter().zip(gamma).map(|(it, g)| (it.weight * g) * (it.weight * g)).collect();
    coefficient_residual(frame, &c)
}

/// Decides weight-scalability, taking the uniform answer directly when the
/// frame is tight.
pub fn solve_scaling(frame: &FusionFrame, cfg: &ToleranceConfig) -> Result<ScalingSolution> {
    if let Some(sol) = tight_shortcut(frame, cfg)? {
        return Ok(sol);
    }
    solve_scaling_general(frame, cfg)
}

fn tight_shortcut(frame: &FusionFrame, cfg: &ToleranceConfig) -> Result<Option<ScalingSolution>> {
    let n = frame.ambient_dim();
    let s = frame.frame_operator();
    let lambda = s.trace() / n as f64;
    if !(lambda > 0.0) {
        return Ok(None);
    }
    let defect = s.distance(&DenseMatrix::identity(n).scale(lambda))?;
    if defect > cfg.residual_tol * lambda {
        return Ok(None);
    }
    let c: Vec<f64> = frame.weights().iter().map(|w| w * w / lambda).collect();
    let residual = coefficient_residual(frame, &c)?;
    if residual > cfg.residual_tol {
        return Ok(None);
    }
    let mut notes = Vec::new();
    notes.push(String::from("tight frame: uniform rescaling by the frame bound"));
    Ok(Some(finish(frame, cfg, c, residual, residual, Selection::TightShortcut, notes)))
}

/// Decides weight-scalability through NNLS followed by the max-min program.
pub fn solve_scaling_general(frame: &FusionFrame, cfg: &ToleranceConfig) -> Result<ScalingSolution> {
    let (a, b) = projector_system(frame);
    let nn = nnls(&a, &b)?;
    let mut notes = Vec::new();
    if nn.residual > cfg.residual_tol {
        let min_coefficient = nn.x.iter().copied().fold(f64::INFINITY, f64::min);
        return Ok(ScalingSolution {
            status: ScalingStatus::Infeasible,
            gamma: gammas(frame, &nn.x),
            coefficients: nn.x,
            residual: nn.residual,
            min_coefficient,
            nnls_residual: nn.residual,
            selection: Selection::Nnls,
            notes,
        });
    }

    let nnls_min = nn.x.iter().copied().fold(f64::INFINITY, f64::min);
    let (c, selection) = match maxmin_lp(&a, &b, cfg.residual_tol) {
        Ok(c) if c.iter().copied().fold(f64::INFINITY, f64::min) >= nnls_min - 1e-12 => (c, Selection::MaxMin),
        Ok(_) => {
            notes.push(String::from("max-min solution was dominated by the NNLS point; kept NNLS"));
            (nn.x.clone(), Selection::Nnls)
        }
        Err(e) => {
            notes.push(alloc::format!("max-min program failed ({e}); kept NNLS point"));
            (nn.x.clone(), Selection::Nnls)
        }
    };
    if selection == Selection::MaxMin {
        notes.push(String::from("coefficients maximize the smallest coefficient among exact solutions"));
    }
    let residual = norm(&sub_vec(&a.mul_vec(&c)?, &b));
    Ok(finish(frame, cfg, c, residual, nn.residual, selection, notes))
}

fn finish(
    frame: &FusionFrame,
    cfg: &ToleranceConfig,
    c: Vec<f64>,
    residual: f64,
    nnls_residual: f64,
    selection: Selection,
    notes: Vec<String>,
) -> ScalingSolution {
    let min_coefficient = c.iter().copied().fold(f64::INFINITY, f64::min);
    let status = if min_coefficient >= cfg.positivity_eps {
        ScalingStatus::StrictlyScalable
    } else {
        ScalingStatus::ScalableWithZeroWeights
    };
    ScalingSolution {
        status,
        gamma: gammas(frame, &c),
        coefficients: c,
        residual,
        min_coefficient,
        nnls_residual,
        selection,
        notes,
    }
}

fn gammas(frame: &FusionFrame, c: &[f64]) -> Vec<Option<f64>> {
    frame
        .items()
        .iter()
        .zip(c)
        .map(|(it, &ci)| (ci > 0.0).then(|| libm::sqrt(ci) / it.weight))
        .collect()
}

