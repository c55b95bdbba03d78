//! Dense real linear algebra used by the rest of the crate.

mod decomp;
mod lp;
mod matrix;
mod nnls;

pub use decomp::{
    lstsq, nullspace, orthonormal_range, orthonormalize, rank, spd_inverse, svd, symmetric_eig, Svd,
    SymmetricEigen,
};
pub use lp::{maxmin_lp, simplex_max};
pub use matrix::{add_vec, dot, norm, scale_vec, sub_vec, unit_vector, DenseMatrix};
pub use nnls::{nnls, nnls_warm, NnlsSolution};
