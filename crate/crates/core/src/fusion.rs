//! Fusion frames `{(W_i, w_i)}` and their operators.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{lstsq, nullspace, rank, spd_inverse, symmetric_eig, DenseMatrix};
use crate::subspace::Subspace;
use crate::tolerance::{ToleranceConfig, THEOREM_TOL};

/// One weighted subspace of a fusion frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameItem {
    pub subspace: Subspace,
    pub weight: f64,
    pub label: Option<String>,
}

impl FrameItem {
    pub fn new(subspace: Subspace, weight: f64) -> Self {
        Self { subspace, weight, label: None }
    }

    pub fn labeled(subspace: Subspace, weight: f64, label: impl Into<String>) -> Self {
        Self { subspace, weight, label: Some(label.into()) }
    }
}

/// Ordered family of weighted subspaces of a common `R^n`.
///
/// Repeated subspaces are allowed. Whether the family actually spans (is a
/// frame) is a property reported by [`FusionFrame::classify`], not a
/// construction requirement.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionFrame {
    items: Vec<FrameItem>,
}

/// Optimal frame bounds: the extreme eigenvalues of the frame operator.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Excess `sum d_i - rank T` together with an orthonormal basis of `ker T`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcessInfo {
    pub excess: usize,
    /// `(sum d_i) x excess`.
    pub kernel: DenseMatrix,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FrameAnalysis {
    pub ambient_dim: usize,
    pub subspace_dims: Vec<usize>,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub is_frame: bool,
    pub is_tight: bool,
    pub is_parseval: bool,
    pub is_riesz_basis: bool,
    pub is_orthogonal_family: bool,
    pub excess: usize,
}

/// Outcome of the reconstruction-identity test for an alternate dual.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DualCheck {
    pub is_dual: bool,
    pub residual: f64,
}

impl FusionFrame {
    pub fn new(items: Vec<FrameItem>) -> Result<Self> {
        let first = items.first().ok_or(Error::EmptyFrame)?;
        let n = first.subspace.ambient_dim();
        for it in &items {
            if it.subspace.ambient_dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: it.subspace.ambient_dim() });
            }
            if !(it.weight > 0.0 && it.weight.is_finite()) {
                return Err(Error::NonpositiveWeight(it.weight));
            }
        }
        Ok(Self { items })
    }

    /// Frame with every weight equal to one.
    pub fn unweighted(subspaces: Vec<Subspace>) -> Result<Self> {
        Self::new(subspaces.into_iter().map(|s| FrameItem::new(s, 1.0)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.items[0].subspace.ambient_dim()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[FrameItem] {
        &self.items
    }

    pub fn item(&self, i: usize) -> &FrameItem {
        &self.items[i]
    }

    pub fn subspace(&self, i: usize) -> &Subspace {
        &self.items[i].subspace
    }

    pub fn weights(&self) -> Vec<f64> {
        self.items.iter().map(|it| it.weight).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.items.iter().map(|it| it.subspace.dim()).collect()
    }

    /// Same subspaces with new weights.
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self> {
        if weights.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: weights.len() });
        }
        let items = self
            .items
            .iter()
            .zip(weights)
            .map(|(it, &w)| FrameItem { weight: w, ..it.clone() })
            .collect();
        Self::new(items)
    }

    /// The items at `indices`, in that order.
    pub fn subframe(&self, indices: &[usize]) -> Result<Self> {
        let mut items = Vec::with_capacity(indices.len());
        for &i in indices {
            let it = self.items.get(i).ok_or(Error::LengthMismatch { expected: self.len(), found: i + 1 })?;
            items.push(it.clone());
        }
        Self::new(items)
    }

    /// `S = sum w_i^2 P_i`.
    pub fn frame_operator(&self) -> DenseMatrix {
        let n = self.ambient_dim();
        let mut s = DenseMatrix::zeros(n, n);
        for it in &self.items {
            s.axpy(it.weight * it.weight, &it.subspace.projector()).expect("same ambient dimension");
        }
        s
    }

    /// `n x (sum d_i)` matrix with block columns `w_i Q_i`; `T T^T = S`.
    pub fn synthesis_matrix(&self) -> DenseMatrix {
        self.block_matrix(true)
    }

    fn block_matrix(&self, weighted: bool) -> DenseMatrix {
        let n = self.ambient_dim();
        let total: usize = self.dims().iter().sum();
        let mut t = DenseMatrix::zeros(n, total);
        let mut col = 0;
        for it in &self.items {
            let w = if weighted { it.weight } else { 1.0 };
            let q = it.subspace.basis();
            for j in 0..q.cols() {
                for i in 0..n {
                    t[(i, col)] = w * q[(i, j)];
                }
                col += 1;
            }
        }
        t
    }

    pub fn frame_bounds(&self) -> FrameBounds {
        let eig = symmetric_eig(&self.frame_operator()).expect("frame operator is symmetric");
        FrameBounds { lower: eig.eigenvalues[0], upper: *eig.eigenvalues.last().expect("n >= 1") }
    }

    /// `dim ker T`, computed from the local frame of stacked orthonormal bases.
    pub fn excess(&self, rank_tol: f64) -> ExcessInfo {
        let t = self.synthesis_matrix();
        let kernel = nullspace(&t, rank_tol);
        ExcessInfo { excess: kernel.cols(), kernel }
    }

    pub fn is_frame(&self, cfg: &ToleranceConfig) -> bool {
        let b = self.frame_bounds();
        b.lower > self.ambient_dim() as f64 * cfg.rank_tol * b.upper
    }

    /// Whether every pair of distinct items is orthogonal at `tol`.
    pub fn is_orthogonal_family(&self, tol: f64) -> bool {
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if self.items[i].subspace.overlap(&self.items[j].subspace).unwrap_or(f64::INFINITY) > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn classify(&self, cfg: &ToleranceConfig) -> FrameAnalysis {
        let n = self.ambient_dim();
        let bounds = self.frame_bounds();
        let is_frame = bounds.lower > n as f64 * cfg.rank_tol * bounds.upper;
        let excess = self.excess(cfg.rank_tol).excess;
        let parseval_defect = self
            .frame_operator()
            .distance(&DenseMatrix::identity(n))
            .expect("square frame operator");
        let is_parseval = is_frame && parseval_defect <= cfg.residual_tol;
        let is_tight = is_frame && (is_parseval || bounds.upper - bounds.lower <= cfg.residual_tol * bounds.upper);
        FrameAnalysis {
            ambient_dim: n,
            subspace_dims: self.dims(),
            lower_bound: bounds.lower,
            upper_bound: bounds.upper,
            is_frame,
            is_tight,
            is_parseval,
            is_riesz_basis: is_frame && excess == 0,
            is_orthogonal_family: self.is_orthogonal_family(THEOREM_TOL),
            excess,
        }
    }

    pub fn is_riesz_basis(&self, cfg: &ToleranceConfig) -> bool {
        self.is_frame(cfg) && self.excess(cfg.rank_tol).excess == 0
    }

    /// The unique `f_i in W_i` with `f = sum f_i`, for a Riesz basis.
    pub fn riesz_decompose(&self, f: &[f64], cfg: &ToleranceConfig) -> Result<Vec<Vec<f64>>> {
        if f.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: f.len() });
        }
        if !self.is_riesz_basis(cfg) {
            return Err(Error::NotRieszBasis);
        }
        let t = self.block_matrix(false);
        let coef = lstsq(&t, f, cfg.rank_tol)?;
        let mut out = Vec::with_capacity(self.len());
        let mut offset = 0;
        for it in &self.items {
            let d = it.subspace.dim();
            out.push(it.subspace.basis().mul_vec(&coef[offset..offset + d])?);
            offset += d;
        }
        Ok(out)
    }

    /// `{(S^{-1} W_i, w_i)}`.
    pub fn canonical_dual(&self, cfg: &ToleranceConfig) -> Result<Self> {
        if !self.is_frame(cfg) {
            return Err(Error::NotAFrame);
        }
        let s_inv = spd_inverse(&self.frame_operator(), cfg.rank_tol).map_err(|_| Error::NotAFrame)?;
        let items = self
            .items
            .iter()
            .map(|it| {
                Ok(FrameItem {
                    subspace: it.subspace.transformed(&s_inv, cfg.rank_tol)?,
                    weight: it.weight,
                    label: it.label.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(items)
    }

    /// Image `{(U W_i, w_i)}` under an invertible `U`.
    pub fn transformed(&self, u: &DenseMatrix, rank_tol: f64) -> Result<Self> {
        let items = self
            .items
            .iter()
            .map(|it| {
                Ok(FrameItem {
                    subspace: it.subspace.transformed(u, rank_tol)?,
                    weight: it.weight,
                    label: it.label.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(items)
    }

    /// Numerical rank of the synthesis matrix.
    pub fn synthesis_rank(&self, rank_tol: f64) -> usize {
        rank(&self.synthesis_matrix(), rank_tol)
    }
}

/// Tests whether `candidate` is an alternate dual of `frame`:
/// `||sum v_i w_i P_{V_i} S_W^{-1} P_{W_i} - I||_F <= tol`.
pub fn is_dual(candidate: &FusionFrame, frame: &FusionFrame, cfg: &ToleranceConfig, tol: f64) -> Result<DualCheck> {
    if candidate.len() != frame.len() {
        return Err(Error::LengthMismatch { expected: frame.len(), found: candidate.len() });
    }
    let n = frame.ambient_dim();
    if candidate.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: candidate.ambient_dim() });
    }
    if !frame.is_frame(cfg) {
        return Err(Error::NotAFrame);
    }
    let s_inv = spd_inverse(&frame.frame_operator(), cfg.rank_tol).map_err(|_| Error::NotAFrame)?;
    let mut sum = DenseMatrix::zeros(n, n);
    for (v, w) in candidate.items().iter().zip(frame.items()) {
        let term = v.subspace.projector().matmul(&s_inv)?.matmul(&w.subspace.projector())?;
        sum.axpy(v.weight * w.weight, &term)?;
    }
    let residual = sum.distance(&DenseMatrix::identity(n))?;
    Ok(DualCheck { is_dual: residual <= tol, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_abs_diff_eq;

    fn coord(n: usize, idx: &[usize]) -> Subspace {
        Subspace::coordinate(n, idx).unwrap()
    }

    fn span(v: &[Vec<f64>]) -> Subspace {
        Subspace::from_vectors(v, 1e-10).unwrap()
    }

    #[test]
    fn rejects_bad_frames() {
        assert_eq!(FusionFrame::new(vec![]), Err(Error::EmptyFrame));
        assert_eq!(FusionFrame::new(vec![FrameItem::new(coord(2, &[0]), 0.0)]), Err(Error::NonpositiveWeight(0.0)));
        let mixed = vec![FrameItem::new(coord(2, &[0]), 1.0), FrameItem::new(coord(3, &[0]), 1.0)];
        assert!(matches!(FusionFrame::new(mixed), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn frame_operator_of_orthonormal_pair() {
        let f = FusionFrame::unweighted(vec![coord(2, &[0]), coord(2, &[1])]).unwrap();
        assert_eq!(f.frame_operator(), DenseMatrix::identity(2));
        let b = f.frame_bounds();
        assert_eq!((b.lower, b.upper), (1.0, 1.0));
    }

    #[test]
    fn bounds_with_repeated_line() {
        let f = FusionFrame::unweighted(vec![coord(2, &[0]), coord(2, &[0]), coord(2, &[1])]).unwrap();
        let b = f.frame_bounds();
        assert_abs_diff_eq!(b.lower, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b.upper, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn synthesis_scales_with_weight() {
        let f = FusionFrame::new(vec![FrameItem::new(coord(3, &[0]), 2.0)]).unwrap();
        assert_eq!(f.synthesis_matrix().column(0), vec![2.0, 0.0, 0.0]);
    }

    #[test]
    fn riesz_decomposition_of_skew_pair() {
        let f = FusionFrame::unweighted(vec![coord(2, &[0]), span(&[vec![1.0, 1.0]])]).unwrap();
        let parts = f.riesz_decompose(&[0.0, 1.0], &ToleranceConfig::for_dim(2)).unwrap();
        assert_abs_diff_eq!(parts[0][0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(parts[0][1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(parts[1][0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(parts[1][1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn decompose_requires_riesz_basis() {
        let f = FusionFrame::unweighted(vec![coord(2, &[0]), coord(2, &[0, 1])]).unwrap();
        assert_eq!(f.riesz_decompose(&[1.0, 0.0], &ToleranceConfig::for_dim(2)), Err(Error::NotRieszBasis));
    }

    #[test]
    fn canonical_dual_of_tight_frame_keeps_subspaces() {
        let f = FusionFrame::unweighted(vec![coord(2, &[0]), coord(2, &[0]), coord(2, &[1]), coord(2, &[1])]).unwrap();
        let cfg = ToleranceConfig::for_dim(2);
        let d = f.canonical_dual(&cfg).unwrap();
        for i in 0..f.len() {
            assert!(d.subspace(i).distance(f.subspace(i)).unwrap() <= 1e-9);
            assert_eq!(d.item(i).weight, f.item(i).weight);
        }
        assert!(is_dual(&d, &f, &cfg, 1e-9).unwrap().is_dual);
    }

    #[test]
    fn non_spanning_family_is_not_a_frame() {
        let f = FusionFrame::unweighted(vec![coord(3, &[0]), coord(3, &[1])]).unwrap();
        let cfg = ToleranceConfig::for_dim(3);
        let a = f.classify(&cfg);
        assert!(!a.is_frame && !a.is_tight && !a.is_riesz_basis);
        assert_eq!(f.canonical_dual(&cfg), Err(Error::NotAFrame));
    }
}
