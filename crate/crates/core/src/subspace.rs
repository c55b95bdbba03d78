//! Nonzero subspaces of `R^n` held as orthonormal bases.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numerics::{norm, orthonormal_range, orthonormalize, sub_vec, unit_vector, DenseMatrix};

/// Largest tolerated `||Q^T Q - I||_F` for a basis handed to
/// [`Subspace::from_orthonormal`].
pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// A subspace `W` of `R^n` with `1 <= dim W <= n`.
///
/// The basis is not unique; compare subspaces through [`Subspace::distance`].
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: DenseMatrix,
}

impl Subspace {
    /// Span of the given vectors, orthonormalized at `rank_tol`.
    pub fn from_vectors(vectors: &[Vec<f64>], rank_tol: f64) -> Result<Self> {
        let basis = orthonormalize(vectors, rank_tol)?;
        if basis.cols() == 0 {
            return Err(Error::ZeroSubspace);
        }
        Ok(Self { basis })
    }

    /// Span of `vectors`, rejecting them if they are linearly dependent.
    pub fn from_independent(vectors: &[Vec<f64>], rank_tol: f64) -> Result<Self> {
        let s = Self::from_vectors(vectors, rank_tol)?;
        if s.dim() != vectors.len() {
            return Err(Error::OverlappingSubspaces);
        }
        Ok(s)
    }

    /// Wraps a basis that is already orthonormal.
    pub fn from_orthonormal(basis: DenseMatrix) -> Result<Self> {
        if basis.cols() == 0 || basis.rows() == 0 {
            return Err(Error::ZeroSubspace);
        }
        let defect = basis.tr_matmul(&basis)?.distance(&DenseMatrix::identity(basis.cols()))?;
        if defect > ORTHONORMAL_TOL {
            return Err(Error::NotOrthonormal(defect));
        }
        Ok(Self { basis })
    }

    /// `span{e_i : i in indices}` in `R^n`.
    pub fn coordinate(n: usize, indices: &[usize]) -> Result<Self> {
        let vectors: Vec<Vec<f64>> = indices
            .iter()
            .map(|&i| {
                if i >= n {
                    Err(Error::DimensionMismatch { expected: n, found: i + 1 })
                } else {
                    Ok(unit_vector(n, i))
                }
            })
            .collect::<Result<_>>()?;
        Self::from_vectors(&vectors, 1e-10)
    }

    /// The whole space `R^n`.
    pub fn full(n: usize) -> Result<Self> {
        Self::from_orthonormal(DenseMatrix::identity(n))
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// The `n x d` orthonormal basis.
    pub fn basis(&self) -> &DenseMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<f64>> {
        self.basis.columns()
    }

    /// Orthogonal projector `Q Q^T`.
    pub fn projector(&self) -> DenseMatrix {
        let qt = self.basis.transpose();
        self.basis.matmul(&qt).expect("basis shapes agree")
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_len(v.len())?;
        let coords = self.basis.tr_mul_vec(v)?;
        self.basis.mul_vec(&coords)
    }

    /// Coordinates of the projection of `v` in the stored basis.
    pub fn coordinates(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_len(v.len())?;
        self.basis.tr_mul_vec(v)
    }

    /// `||Q1^T Q2||_F`, zero exactly when the subspaces are orthogonal.
    pub fn overlap(&self, other: &Self) -> Result<f64> {
        self.check_len(other.ambient_dim())?;
        Ok(self.basis.tr_matmul(&other.basis)?.frobenius_norm())
    }

    pub fn is_orthogonal_to(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(self.overlap(other)? <= tol)
    }

    /// Whether `||v - P v|| <= tol ||v||`.
    pub fn contains(&self, v: &[f64], tol: f64) -> Result<bool> {
        let p = self.project(v)?;
        Ok(norm(&sub_vec(v, &p)) <= tol * norm(v))
    }

    /// `W1 + W2`, required to be direct.
    pub fn direct_sum(&self, other: &Self, rank_tol: f64) -> Result<Self> {
        self.check_len(other.ambient_dim())?;
        let joined = self.basis.hcat(&other.basis)?;
        let q = orthonormal_range(&joined, rank_tol);
        if q.cols() != self.dim() + other.dim() {
            return Err(Error::OverlappingSubspaces);
        }
        Ok(Self { basis: q })
    }

    /// `W1 + W2`, not necessarily direct.
    pub fn sum(&self, other: &Self, rank_tol: f64) -> Result<Self> {
        self.check_len(other.ambient_dim())?;
        let joined = self.basis.hcat(&other.basis)?;
        Ok(Self { basis: orthonormal_range(&joined, rank_tol) })
    }

    /// Orthogonal complement of `other` inside `self`, `None` when it is `{0}`.
    pub fn complement_of(&self, other: &Self, rank_tol: f64) -> Result<Option<Self>> {
        self.check_len(other.ambient_dim())?;
        let p_other = other.projector();
        let residual = self.basis.sub(&p_other.matmul(&self.basis)?)?;
        let q = orthonormal_range(&residual, rank_tol);
        Ok((q.cols() > 0).then_some(Self { basis: q }))
    }

    /// Projector distance `||P1 - P2||_F`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.check_len(other.ambient_dim())?;
        self.projector().distance(&other.projector())
    }

    /// Whether the subspaces coincide up to `tol` in projector distance.
    pub fn same_as(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(self.distance(other)? <= tol)
    }

    /// Image `M W` for a square matrix `M`; the dimension is kept only when
    /// `M` is injective on `W`.
    pub fn transformed(&self, m: &DenseMatrix, rank_tol: f64) -> Result<Self> {
        if m.cols() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: m.cols() });
        }
        let image = m.matmul(&self.basis)?;
        let q = orthonormal_range(&image, rank_tol);
        if q.cols() != self.dim() {
            return Err(Error::Singular);
        }
        Ok(Self { basis: q })
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: n });
        }
        Ok(())
    }
}
