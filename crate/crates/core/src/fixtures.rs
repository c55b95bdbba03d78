//! Named example frames with their excess decompositions.
//!
//! Coordinates are 0-based: `e(n, 0)` is the first canonical basis vector.
//! Infinite-dimensional constructions are truncated and say so in the item
//! labels.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fusion::{FrameItem, FusionFrame};
use crate::numerics::DenseMatrix;
use crate::scaling::{ExcessDecomposition, ExcessSpec};
use crate::subspace::Subspace;

const RANK_TOL: f64 = 1e-10;

/// A frame together with the decomposition its construction implies.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub frame: FusionFrame,
    pub decomposition: Option<ExcessDecomposition>,
}

impl Fixture {
    fn plain(frame: FusionFrame) -> Self {
        Self { frame, decomposition: None }
    }

    /// The image of the fixture under an invertible map `m`.
    pub fn transformed(&self, m: &DenseMatrix) -> Result<Self> {
        Ok(Self {
            frame: self.frame.transformed(m, RANK_TOL)?,
            decomposition: self.decomposition.as_ref().map(|d| d.transformed(m)).transpose()?,
        })
    }

    fn with(frame: FusionFrame, riesz: Vec<usize>, excess: Vec<ExcessSpec>) -> Self {
        Self { frame, decomposition: Some(ExcessDecomposition { riesz, excess }) }
    }
}

fn out_of_range(msg: impl Into<String>) -> Error {
    Error::ParameterOutOfRange(msg.into())
}

/// Canonical basis vector `e_i` of `R^n`.
pub fn e(n: usize, i: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[i] = 1.0;
    v
}

fn comb(n: usize, terms: &[(usize, f64)]) -> Vec<f64> {
    let mut v = vec![0.0; n];
    for &(i, a) in terms {
        v[i] += a;
    }
    v
}

fn span(vectors: &[Vec<f64>]) -> Result<Subspace> {
    Subspace::from_vectors(vectors, RANK_TOL)
}

fn item(vectors: &[Vec<f64>], label: impl Into<String>) -> Result<FrameItem> {
    Ok(FrameItem::labeled(span(vectors)?, 1.0, label))
}

fn coord(n: usize, idx: impl IntoIterator<Item = usize>, label: impl Into<String>) -> Result<FrameItem> {
    let idx: Vec<usize> = idx.into_iter().collect();
    Ok(FrameItem::labeled(Subspace::coordinate(n, &idx)?, 1.0, label))
}

/// Riesz basis `{span{u}, span{e_1, e_2}}` of `R^3`; scalable iff `u` is a
/// multiple of `e_0`.
pub fn riesz_u(u: [f64; 3]) -> Result<Fixture> {
    if !(u[0].abs() > 1e-12) || u.iter().any(|x| !x.is_finite()) {
        return Err(out_of_range("u must have a nonzero first coordinate"));
    }
    let frame = FusionFrame::new(vec![item(&[u.to_vec()], "W1 = span{u}")?, coord(3, [1, 2], "W2")?])?;
    Ok(Fixture::plain(frame))
}

/// 1-excess frame in `R^n`, `n >= 4`: `V_0 = span{a e_0 - sqrt(1-a^2) e_1}`
/// over the non-orthogonal Riesz basis `span{e_0}`, `span{e_0 + e_1}`,
/// `span{e_2..}`. Scalable for `0 < a < sqrt(2)/2`.
pub fn one_excess_alpha(alpha: f64, n: usize) -> Result<Fixture> {
    if !(alpha > 0.0 && alpha < core::f64::consts::FRAC_1_SQRT_2) {
        return Err(out_of_range(format!("alpha = {alpha} outside (0, sqrt(2)/2)")));
    }
    if n < 4 {
        return Err(out_of_range(format!("ambient dimension {n} < 4")));
    }
    let s = libm::sqrt(1.0 - alpha * alpha);
    let x = comb(n, &[(0, alpha), (1, -s)]);
    let frame = FusionFrame::new(vec![
        item(&[x.clone()], "V0")?,
        coord(n, [0], "W1")?,
        item(&[comb(n, &[(0, 1.0), (1, 1.0)])], "W2")?,
        coord(n, 2..n, "W3")?,
    ])?;
    let components = vec![(1, comb(n, &[(0, alpha + s)])), (2, comb(n, &[(0, -s), (1, -s)]))];
    Ok(Fixture::with(frame, vec![1, 2, 3], vec![ExcessSpec::with_components(x, Some(0), components)]))
}

/// Closed-form coefficients `(c_0, c_1, c_2, c_3)` of [`one_excess_alpha`].
pub fn one_excess_alpha_coefficients(alpha: f64) -> [f64; 4] {
    let s = libm::sqrt(1.0 - alpha * alpha);
    let d = 1.0 - alpha * alpha + alpha * s;
    [1.0 / d, (1.0 - 2.0 * alpha * alpha) / d, 2.0 * alpha * s / d, 1.0]
}

/// 1-excess frame in `R^4`: `V_0 = span{a}` over `span{e_0, e_1}`,
/// `span{e_2 + b e_0}`, `span{e_3}`.
pub fn h4_beta(a: [f64; 4], beta: f64) -> Result<Fixture> {
    if a.iter().all(|x| *x == 0.0) || a.iter().any(|x| !x.is_finite()) || !beta.is_finite() {
        return Err(out_of_range("a must be a nonzero finite vector and beta finite"));
    }
    let frame = FusionFrame::new(vec![
        item(&[a.to_vec()], "V0")?,
        coord(4, [0, 1], "W1")?,
        item(&[comb(4, &[(2, 1.0), (0, beta)])], "W2")?,
        coord(4, [3], "W3")?,
    ])?;
    Ok(Fixture::with(frame, vec![1, 2, 3], vec![ExcessSpec::new(a.to_vec(), Some(0))]))
}

/// `{span{e_0, e_1}, span{e_0, e_1}, span{e_2}}`, scalable by `c = (1/2, 1/2, 1)`.
pub fn two_excess_h3() -> Result<Fixture> {
    let frame = FusionFrame::new(vec![coord(3, [0, 1], "V1")?, coord(3, [0, 1], "V2")?, coord(3, [2], "W3")?])?;
    Ok(Fixture::with(
        frame,
        vec![0, 1, 2],
        vec![ExcessSpec::new(e(3, 1), Some(0)), ExcessSpec::new(e(3, 0), Some(1))],
    ))
}

/// Four 2-dimensional and 1-dimensional subspaces of `R^4`, scalable with
/// every `c_i = 2/3`.
pub fn two_excess_h4() -> Result<Fixture> {
    let h = 0.5;
    let r = libm::sqrt(3.0) / 2.0;
    let x = comb(4, &[(1, h), (3, r)]);
    let y = comb(4, &[(0, h), (2, r)]);
    let frame = FusionFrame::new(vec![
        item(&[e(4, 0), x.clone()], "V1")?,
        item(&[e(4, 1), y.clone()], "V2")?,
        item(&[comb(4, &[(1, h), (3, -r)])], "W3")?,
        item(&[comb(4, &[(0, h), (2, -r)])], "W4")?,
    ])?;
    Ok(Fixture::with(frame, vec![0, 1, 2, 3], vec![ExcessSpec::new(x, Some(0)), ExcessSpec::new(y, Some(1))]))
}

/// `{span{e_0, e_1}, span{e_1, e_2}, span{e_2}}`: contains an orthonormal
/// basis yet only admits a solution with a zero weight.
pub fn nonscalable_h3() -> Result<Fixture> {
    let frame = FusionFrame::new(vec![coord(3, [0, 1], "V1")?, coord(3, [1, 2], "V2")?, coord(3, [2], "W3")?])?;
    Ok(Fixture::with(
        frame,
        vec![0, 1, 2],
        vec![ExcessSpec::new(e(3, 1), Some(0)), ExcessSpec::new(e(3, 2), Some(1))],
    ))
}

/// 2-excess frame truncated to `R^7` (the tail `span{e_6, ...}` becomes
/// `span{e_6}`). Requires `a[3] != 0` and `a[5] != 0`.
pub fn big_h7(a: [f64; 7], beta: f64) -> Result<Fixture> {
    if a[3] == 0.0 || a[5] == 0.0 || a.iter().any(|x| !x.is_finite()) || !beta.is_finite() {
        return Err(out_of_range("big_h7 needs a4 != 0 and a6 != 0"));
    }
    let n = 7;
    let w = comb(n, &[(0, a[0] + beta * a[2]), (1, a[1]), (3, beta * a[3]), (5, a[6])]);
    if !(crate::numerics::norm(&w) > 1e-12) {
        return Err(out_of_range("excess vector of V2 vanishes"));
    }
    let frame = FusionFrame::new(vec![
        coord(n, [0, 1, 2], "V1")?,
        item(&[e(n, 2), w.clone()], "V2")?,
        item(&[comb(n, &[(0, a[2]), (3, a[3])]), comb(n, &[(1, a[4]), (4, a[5])]), e(n, 5)], "V3")?,
        coord(n, [6], "V4 (tail truncated to e7)")?,
    ])?;
    Ok(Fixture::with(frame, vec![0, 1, 2, 3], vec![ExcessSpec::new(e(n, 2), Some(0)), ExcessSpec::new(w, Some(1))]))
}

/// Index of `e_k`, `-m <= k <= m`, in `R^{2m+1}`.
fn centered(m: usize, k: isize) -> usize {
    (k + m as isize) as usize
}

/// Shift construction truncated to `R^{2m+1}` (coordinates `-m..=m`):
/// `W_1 = span{e_0..e_m}`, `V_2 = span{e_-m..e_0}` carrying `e_0` as excess.
pub fn shift_trunc(m: usize) -> Result<Fixture> {
    if m == 0 {
        return Err(out_of_range("m must be at least 1"));
    }
    let n = 2 * m + 1;
    let mi = m as isize;
    let frame = FusionFrame::new(vec![
        coord(n, (0..=mi).map(|k| centered(m, k)), format!("W1 = span{{e_0..e_{m}}}, truncated to H_{n}"))?,
        coord(n, (-mi..=0).map(|k| centered(m, k)), format!("V2 = span{{e_-{m}..e_0}}, truncated to H_{n}"))?,
    ])?;
    Ok(Fixture::with(frame, vec![0, 1], vec![ExcessSpec::new(e(n, centered(m, 0)), Some(1))]))
}

/// Alternate dual of [`shift_trunc`]`(big_m)` in `R^{2M+1}`:
/// `Z_1 = span{e_-n..e_M}`, `Z_2 = span{e_-M..e_m}`. Excess `n + m + 1`;
/// scalable iff `n = m = M`.
pub fn zdual_trunc(n: usize, m: usize, big_m: usize) -> Result<Fixture> {
    if m == 0 || big_m < n.max(m) {
        return Err(out_of_range(format!("need m >= 1 and M >= max(n, m), got n={n}, m={m}, M={big_m}")));
    }
    let dim = 2 * big_m + 1;
    let (ni, mi, bi) = (n as isize, m as isize, big_m as isize);
    let frame = FusionFrame::new(vec![
        coord(dim, (-ni..=bi).map(|k| centered(big_m, k)), format!("Z1 = span{{e_-{n}..e_{big_m}}}, truncated to H_{dim}"))?,
        coord(dim, (-bi..=mi).map(|k| centered(big_m, k)), format!("Z2 = span{{e_-{big_m}..e_{m}}}, truncated to H_{dim}"))?,
    ])?;
    let mut excess: Vec<ExcessSpec> = (-ni..=0).map(|k| ExcessSpec::new(e(dim, centered(big_m, k)), Some(0))).collect();
    excess.extend((1..=mi).map(|k| ExcessSpec::new(e(dim, centered(big_m, k)), Some(1))));
    Ok(Fixture::with(frame, vec![0, 1], excess))
}

/// Three lines at 120 degrees in `R^2`.
pub fn mercedes_benz() -> Result<Fixture> {
    let r = libm::sqrt(3.0) / 2.0;
    let v = [vec![0.0, 1.0], vec![-r, -0.5], vec![r, -0.5]];
    let frame = FusionFrame::new(vec![item(&[v[0].clone()], "f1")?, item(&[v[1].clone()], "f2")?, item(&[v[2].clone()], "f3")?])?;
    Ok(Fixture::with(frame, vec![0, 1], vec![ExcessSpec::new(v[2].clone(), Some(2))]))
}

/// `span{e_0}` repeated `copies` more times next to the Riesz basis
/// `span{e_0}`, `span{(skew, 1)}` of `R^2`. The Riesz part is orthogonal iff
/// `skew = 0`.
pub fn repeated_subspace(copies: usize, skew: f64) -> Result<Fixture> {
    if copies == 0 || !skew.is_finite() {
        return Err(out_of_range("need at least one repeated copy and finite skew"));
    }
    let mut items = vec![coord(2, [0], "W1")?, item(&[vec![skew, 1.0]], "W2")?];
    for c in 0..copies {
        items.push(coord(2, [0], format!("W1 copy {}", c + 1))?);
    }
    let frame = FusionFrame::new(items)?;
    let excess = (0..copies).map(|c| ExcessSpec::new(e(2, 0), Some(2 + c))).collect();
    Ok(Fixture::with(frame, vec![0, 1], excess))
}

/// Infinite-excess 2-tight example truncated to `R^9`.
pub fn tight2_h9() -> Result<Fixture> {
    let n = 9;
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let plus = |a: usize| comb(n, &[(a, s), (a + 1, s)]);
    let minus = |a: usize| comb(n, &[(a, s), (a + 1, -s)]);
    let on_v1 = vec![e(n, 1), e(n, 2), plus(3), plus(5), plus(7)];
    let on_v2 = vec![e(n, 0), minus(3), minus(5), minus(7)];
    let mut v1 = vec![e(n, 0)];
    v1.extend(on_v1.iter().cloned());
    let mut v2 = vec![e(n, 1), e(n, 2)];
    v2.extend(on_v2.iter().cloned());
    let frame = FusionFrame::new(vec![
        item(&v1, "V1, truncated to H_9")?,
        item(&v2, "V2, truncated to H_9")?,
        coord(n, 3..n, "W3 = span{e_4..e_9}, truncated to H_9")?,
    ])?;
    let mut excess: Vec<ExcessSpec> = on_v1.into_iter().map(|x| ExcessSpec::new(x, Some(0))).collect();
    excess.extend(on_v2.into_iter().map(|x| ExcessSpec::new(x, Some(1))));
    Ok(Fixture::with(frame, vec![0, 1, 2], excess))
}

/// All excess adjoined to one subspace: `V_1 = span{e_0} + span{x, y}` with
/// `x = (e_1 + e_3)/sqrt 2`, `y = (e_2 + e_3)/sqrt 2`, next to
/// `span{e_1, e_2}` and `span{e_3}` in `R^4`.
pub fn one_subspace_h4() -> Result<Fixture> {
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let x = comb(4, &[(1, s), (3, s)]);
    let y = comb(4, &[(2, s), (3, s)]);
    let frame = FusionFrame::new(vec![
        item(&[e(4, 0), x.clone(), y.clone()], "V1")?,
        coord(4, [1, 2], "W2")?,
        coord(4, [3], "W3")?,
    ])?;
    Ok(Fixture::with(frame, vec![0, 1, 2], vec![ExcessSpec::new(x, Some(0)), ExcessSpec::new(y, Some(0))]))
}

/// Orthonormal basis of `R^3` with `span{e_0}` and `span{e_1}` repeated.
pub fn ortho_excess_h3() -> Result<Fixture> {
    let frame = FusionFrame::new(vec![
        coord(3, [0], "W1")?,
        coord(3, [1], "W2")?,
        coord(3, [2], "W3")?,
        coord(3, [0], "W1 again")?,
        coord(3, [1], "W2 again")?,
    ])?;
    Ok(Fixture::with(
        frame,
        vec![0, 1, 2],
        vec![ExcessSpec::new(e(3, 0), Some(3)), ExcessSpec::new(e(3, 1), Some(4))],
    ))
}

/// The canonical basis of `R^n` as `n` lines.
pub fn orthonormal(n: usize) -> Result<Fixture> {
    if n == 0 {
        return Err(out_of_range("dimension must be positive"));
    }
    let items = (0..n).map(|i| coord(n, [i], format!("e{}", i + 1))).collect::<Result<Vec<_>>>()?;
    Ok(Fixture::plain(FusionFrame::new(items)?))
}
