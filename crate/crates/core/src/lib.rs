//! Finite-dimensional fusion-frame toolkit.
//!
//! A fusion frame is a weighted family of subspaces `{(W_i, w_i)}` of `R^n`
//! whose frame operator `S = sum w_i^2 P_i` is invertible. This crate
//! classifies fusion frames (optimal bounds, excess, Riesz / Parseval /
//! orthogonality), computes canonical duals, and decides weight-scalability:
//! whether positive factors `g_i` exist with `sum (w_i g_i)^2 P_i = I`.
//!
//! Structural characterizations of scalable frames with small excess are
//! exposed as checkers in [`scaling`], each cross-validated against the
//! convex solver.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod fixtures;
pub mod fusion;
pub mod numerics;
pub mod scaling;
pub mod subspace;
pub mod tolerance;

pub use error::{Error, Result};
pub use fusion::{DualCheck, ExcessInfo, FrameAnalysis, FrameBounds, FrameItem, FusionFrame};
pub use numerics::DenseMatrix;
pub use scaling::{
    solve_scaling, verify_scaling, ExcessDecomposition, ExcessSpec, ScalingSolution,
    ScalingStatus, TheoremReport,
};
pub use subspace::Subspace;
pub use tolerance::ToleranceConfig;
