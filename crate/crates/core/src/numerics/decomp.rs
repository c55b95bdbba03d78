//! Jacobi-based factorizations: one-sided Jacobi SVD and the cyclic Jacobi
//! symmetric eigensolver, plus the rank-revealing helpers built on them.

use alloc::vec;
use alloc::vec::Vec;

use super::matrix::{dot, norm, DenseMatrix};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Thin singular value decomposition `A = U diag(s) V^T`.
///
/// For an `m x k` input, `u` is `m x k`, `v` is `k x k` and the singular
/// values are sorted in descending order (stable on ties). Columns of `u`
/// belonging to zero singular values are zero.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: DenseMatrix,
    pub singular_values: Vec<f64>,
    pub v: DenseMatrix,
}

impl Svd {
    /// Number of singular values above `rank_tol * sigma_max`.
    pub fn rank(&self, rank_tol: f64) -> usize {
        let cutoff = self.cutoff(rank_tol);
        self.singular_values.iter().filter(|&&s| s > cutoff).count()
    }

    pub fn cutoff(&self, rank_tol: f64) -> f64 {
        let smax = self.singular_values.first().copied().unwrap_or(0.0);
        rank_tol * smax
    }
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd(a: &DenseMatrix) -> Svd {
    let (m, k) = (a.rows(), a.cols());
    // Work column-major: cols[j] is column j of A V.
    let mut cols: Vec<Vec<f64>> = a.columns();
    let mut v: Vec<Vec<f64>> = (0..k)
        .map(|j| {
            let mut e = vec![0.0; k];
            e[j] = 1.0;
            e
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in (p + 1)..k {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma == 0.0 || libm::fabs(gamma) <= f64::EPSILON * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = libm::copysign(1.0, zeta) / (libm::fabs(zeta) + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                rotate_pair(&mut cols, p, q, c, s);
                rotate_pair(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma: Vec<f64> = cols.iter().map(|c| norm(c)).collect();
    let mut order: Vec<usize> = (0..k).collect();
    // Stable sort keeps the lowest index first on ties.
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap_or(core::cmp::Ordering::Equal));

    let mut u = DenseMatrix::zeros(m, k);
    let mut vm = DenseMatrix::zeros(k, k);
    let mut sorted = Vec::with_capacity(k);
    for (jj, &j) in order.iter().enumerate() {
        let s = sigma[j];
        sorted.push(s);
        if s > 0.0 {
            for i in 0..m {
                u[(i, jj)] = cols[j][i] / s;
            }
        }
        for i in 0..k {
            vm[(i, jj)] = v[j][i];
        }
    }
    Svd { u, singular_values: sorted, v: vm }
}

fn rotate_pair(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (lo, hi) = cols.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}

/// Eigen-decomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in eigenvalue order.
    pub eigenvectors: DenseMatrix,
}

impl SymmetricEigen {
    /// Rebuilds `V diag(f(lambda)) V^T`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> DenseMatrix {
        let n = self.eigenvalues.len();
        let mut out = DenseMatrix::zeros(n, n);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let fl = f(lam);
            if fl == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = self.eigenvectors[(i, k)] * fl;
                for j in 0..n {
                    out[(i, j)] += vik * self.eigenvectors[(j, k)];
                }
            }
        }
        out
    }
}

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Accepts `M` when `||M - M^T||_F <= 1e-9 * n * ||M||_F` and works on the
/// symmetric part.
pub fn symmetric_eig(m: &DenseMatrix) -> Result<SymmetricEigen> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let fro = m.frobenius_norm();
    let asym = m.asymmetry();
    if asym > 1e-9 * (n.max(1) as f64) * fro {
        return Err(Error::NotSymmetric(if fro > 0.0 { asym / fro } else { asym }));
    }
    let mut a = m.add(&m.transpose())?.scale(0.5);
    let mut v = DenseMatrix::identity(n);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off == 0.0 || libm::sqrt(off) <= 1e-3 * f64::EPSILON * fro {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                if libm::fabs(apq) < 0.25 * f64::EPSILON * libm::sqrt(libm::fabs(a[(p, p)] * a[(q, q)])) {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = libm::copysign(1.0, theta) / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).unwrap_or(core::cmp::Ordering::Equal));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = v.select_columns(&order);
    Ok(SymmetricEigen { eigenvalues, eigenvectors })
}

/// Orthonormal basis (as columns of an `n x d` matrix) of the span of the
/// given vectors; `d` is their numerical rank at `rank_tol`.
///
/// Each basis vector is sign-normalized so that its largest-magnitude entry
/// is positive.
pub fn orthonormalize(vectors: &[Vec<f64>], rank_tol: f64) -> Result<DenseMatrix> {
    let first = vectors.first().ok_or(Error::EmptyInput)?;
    let n = first.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    for v in vectors {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
    }
    let a = DenseMatrix::from_columns(vectors)?;
    Ok(orthonormal_range(&a, rank_tol))
}

/// Orthonormal basis of the column space of `a`.
pub fn orthonormal_range(a: &DenseMatrix, rank_tol: f64) -> DenseMatrix {
    let dec = svd(a);
    let r = dec.rank(rank_tol);
    let mut q = dec.u.select_columns(&(0..r).collect::<Vec<_>>());
    for j in 0..r {
        canonicalize_sign(&mut q, j);
    }
    q
}

fn canonicalize_sign(q: &mut DenseMatrix, j: usize) {
    let mut best = 0usize;
    let mut best_abs = -1.0;
    for i in 0..q.rows() {
        let a = libm::fabs(q[(i, j)]);
        // Prefer the lowest index unless another entry is clearly larger.
        if a > best_abs * (1.0 + 1e-12) {
            best_abs = a;
            best = i;
        }
    }
    if q[(best, j)] < 0.0 {
        for i in 0..q.rows() {
            q[(i, j)] = -q[(i, j)];
        }
    }
}

/// Orthonormal basis of `ker M` as the columns of a `cols(M) x (cols(M) - rank)`
/// matrix (possibly with zero columns).
pub fn nullspace(m: &DenseMatrix, rank_tol: f64) -> DenseMatrix {
    let dec = svd(m);
    let r = dec.rank(rank_tol);
    let k = m.cols();
    dec.v.select_columns(&(r..k).collect::<Vec<_>>())
}

/// Numerical rank at `rank_tol`.
pub fn rank(m: &DenseMatrix, rank_tol: f64) -> usize {
    svd(m).rank(rank_tol)
}

/// Minimum-norm least-squares solution of `A x = b`.
pub fn lstsq(a: &DenseMatrix, b: &[f64], rank_tol: f64) -> Result<Vec<f64>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    let dec = svd(a);
    Ok(lstsq_with(&dec, b, rank_tol))
}

pub(crate) fn lstsq_with(dec: &Svd, b: &[f64], rank_tol: f64) -> Vec<f64> {
    let k = dec.v.rows();
    let r = dec.rank(rank_tol);
    let mut x = vec![0.0; k];
    for j in 0..r {
        let s = dec.singular_values[j];
        let coef = (0..b.len()).map(|i| dec.u[(i, j)] * b[i]).sum::<f64>() / s;
        for (i, xi) in x.iter_mut().enumerate() {
            *xi += coef * dec.v[(i, j)];
        }
    }
    x
}

/// Inverse of a symmetric positive-definite matrix through its
/// eigen-decomposition. Fails with [`Error::Singular`] when the smallest
/// eigenvalue is below `rank_tol * lambda_max`.
pub fn spd_inverse(m: &DenseMatrix, rank_tol: f64) -> Result<DenseMatrix> {
    let eig = symmetric_eig(m)?;
    let lmax = eig.eigenvalues.last().copied().unwrap_or(0.0);
    let lmin = eig.eigenvalues.first().copied().unwrap_or(0.0);
    if lmax <= 0.0 || lmin <= rank_tol * lmax {
        return Err(Error::Singular);
    }
    Ok(eig.map(|l| 1.0 / l))
}
