//! Structural characterizations of scalable fusion frames, each evaluated
//! against a declared excess decomposition and cross-checked with the solver.
//!
//! Conditions quantified over all `f` are tested on `f = e_1..e_n`, which is
//! equivalent by linearity. When the frame weights are not one, the squared
//! scaling factor `g_i^2` in these formulas is replaced by the coefficient
//! `c_i = (w_i g_i)^2`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use super::decomposition::{Carrier, ExcessDecomposition, ResolvedDecomposition};
use super::report::{ConditionRole::*, Prediction, TheoremReport};
use super::solver::{coefficient_residual, solve_scaling, ScalingSolution};
use crate::error::{Error, Result};
use crate::fusion::{FrameItem, FusionFrame};
use crate::numerics::{dot, norm, scale_vec, spd_inverse, sub_vec};
use crate::subspace::Subspace;
use crate::tolerance::{ToleranceConfig, THEOREM_TOL as T};

/// Identifiers accepted by [`run_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    RieszScalable,
    OneExcess,
    OneExcessStructure,
    TwoExcess,
    TwoExcessH3,
    KExcess,
    SwapStructure,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        Self::RieszScalable,
        Self::OneExcess,
        Self::OneExcessStructure,
        Self::TwoExcess,
        Self::TwoExcessH3,
        Self::KExcess,
        Self::SwapStructure,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::RieszScalable => "riesz-scalable",
            Self::OneExcess => "one-excess",
            Self::OneExcessStructure => "one-excess-structure",
            Self::TwoExcess => "two-excess",
            Self::TwoExcessH3 => "two-excess-h3",
            Self::KExcess => "k-excess",
            Self::SwapStructure => "swap-structure",
        }
    }

    pub fn needs_decomposition(self) -> bool {
        self != Self::RieszScalable
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, String> {
        Self::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| format!("unknown theorem id `{s}`"))
    }
}

/// Runs the checker named by `id`.
pub fn run_check(
    id: TheoremId,
    frame: &FusionFrame,
    dec: Option<&ExcessDecomposition>,
    sol: &ScalingSolution,
    cfg: &ToleranceConfig,
) -> Result<TheoremReport> {
    let need = || dec.ok_or_else(|| Error::MalformedDecomposition(String::from("no decomposition declared")));
    match id {
        TheoremId::RieszScalable => check_riesz_scalable(frame, sol, cfg),
        TheoremId::OneExcess => check_one_excess(frame, need()?, sol, cfg),
        TheoremId::OneExcessStructure => check_one_excess_structure(frame, need()?, sol, cfg),
        TheoremId::TwoExcess => check_two_excess(frame, need()?, sol, cfg),
        TheoremId::TwoExcessH3 => check_two_excess_h3_orthogonality(frame, need()?, sol, cfg),
        TheoremId::KExcess => check_k_excess(frame, need()?, sol, cfg),
        TheoremId::SwapStructure => check_swap_structure(frame, need()?, sol, cfg),
    }
}

fn check_len(frame: &FusionFrame, sol: &ScalingSolution) -> Result<()> {
    if sol.coefficients.len() != frame.len() {
        return Err(Error::LengthMismatch { expected: frame.len(), found: sol.coefficients.len() });
    }
    Ok(())
}

fn c_riesz(dec: &ResolvedDecomposition, sol: &ScalingSolution) -> Vec<f64> {
    dec.riesz.iter().map(|&i| sol.c(i)).collect()
}

fn c_excess(dec: &ResolvedDecomposition, sol: &ScalingSolution) -> Vec<f64> {
    (0..dec.excess.len()).map(|e| sol.c(dec.carrier_item(e))).collect()
}

fn project(s: &Subspace, v: &[f64]) -> Vec<f64> {
    s.project(v).expect("dimensions checked during resolve")
}

fn with_resolved(dec: &ResolvedDecomposition, report: &mut TheoremReport) {
    report.notes.extend(dec.notes.iter().cloned());
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn min_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::INFINITY, f64::min)
}

/// A Riesz basis is scalable exactly when it is orthogonal; checks the three
/// equivalent formulations and their agreement.
pub fn check_riesz_scalable(frame: &FusionFrame, sol: &ScalingSolution, cfg: &ToleranceConfig) -> Result<TheoremReport> {
    check_len(frame, sol)?;
    if !frame.is_riesz_basis(cfg) {
        return Err(Error::NotRieszBasis);
    }
    let mut report = TheoremReport::new(TheoremId::RieszScalable.as_str(), sol.status);

    let unit = vec![1.0; frame.len()];
    let scalable = report.residual(
        "inverse weights scale the frame",
        coefficient_residual(frame, &unit)?,
        T,
        Necessary,
    );

    let s_inv = spd_inverse(&frame.frame_operator(), cfg.rank_tol)?;
    let mut op_gap: f64 = 0.0;
    for it in frame.items() {
        let p = it.subspace.projector();
        let lhs = s_inv.matmul(&p)?;
        op_gap = op_gap.max(lhs.distance(&p.scale(1.0 / (it.weight * it.weight)))?);
    }
    let identity = report.residual("inverse frame operator acts as w_i^-2 on each subspace", op_gap, T, Necessary);

    let overlap = max_of((0..frame.len()).flat_map(|i| {
        ((i + 1)..frame.len()).map(move |j| frame.subspace(i).overlap(frame.subspace(j)).unwrap_or(f64::INFINITY))
    }));
    let orthogonal = report.residual("subspaces pairwise orthogonal", overlap, T, Necessary);

    let agree = scalable == identity && identity == orthogonal;
    report.push("three formulations agree", agree, if agree { 0.0 } else { 1.0 }, Hypothesis);
    report.conclude(if orthogonal { Prediction::Scalable } else { Prediction::NotScalable });
    report.verdict_consistent_with_solver &= agree;
    Ok(report)
}

/// Necessary conditions for one excess element and the orthogonal-Riesz-part
/// criterion.
pub fn check_one_excess(
    frame: &FusionFrame,
    dec: &ExcessDecomposition,
    sol: &ScalingSolution,
    cfg: &ToleranceConfig,
) -> Result<TheoremReport> {
    check_len(frame, sol)?;
    let dec = dec.resolve(frame, cfg)?;
    if dec.excess.len() != 1 {
        return Err(Error::MalformedDecomposition(format!("expected one excess vector, found {}", dec.excess.len())));
    }
    let mut report = TheoremReport::new(TheoremId::OneExcess.as_str(), sol.status);
    with_resolved(&dec, &mut report);

    let ex = &dec.excess[0];
    let x = &ex.vector;
    let m = dec.riesz_len();
    let Carrier::Standalone(carrier) = ex.carrier else {
        let Carrier::Hosted(r) = ex.carrier else { unreachable!() };
        let dim = frame.subspace(dec.riesz[r]).dim();
        report.push("excess element spans a one-dimensional item", false, dim as f64, Necessary);
        report.notes.push(String::from("excess element is adjoined to a larger subspace"));
        report.conclude(Prediction::NotScalable);
        return Ok(report);
    };
    report.push("excess element spans a one-dimensional item", true, 1.0, Necessary);

    let sigma = dec.support(0);
    let off: Vec<usize> = (0..m).filter(|r| !sigma.contains(r)).collect();
    let w = &dec.riesz_subspaces;

    let mut free_ok = true;
    free_ok &= report.residual(
        "x orthogonal to W_j off the support",
        max_of(off.iter().map(|&j| norm(&project(&w[j], x)))),
        T,
        Necessary,
    );
    free_ok &= report.residual(
        "W_j off the support orthogonal to the other subspaces",
        max_of(off.iter().map(|&j| dec.overlap_with_others(j))),
        T,
        Necessary,
    );
    let min_proj = min_of(sigma.iter().map(|&j| norm(&project(&w[j], x))));
    free_ok &= report.push("x not orthogonal to W_j on the support", min_proj > T, min_proj, Necessary);
    let max_dim = sigma.iter().map(|&j| w[j].dim()).max().unwrap_or(1);
    free_ok &= report.push("dim W_j = 1 on the support", max_dim == 1, max_dim as f64, Necessary);

    if sol.status.is_strict() {
        let c0 = sol.c(carrier);
        let c = c_riesz(&dec, sol);
        report.residual("excess identity", dec.identity_residual(&c, &[c0]), T, Necessary);
        report.push("c_0 < 1", 1.0 - c0 > T, 1.0 - c0, Necessary);

        let mut sx = vec![0.0; x.len()];
        for (r, wr) in w.iter().enumerate() {
            let p = project(wr, x);
            for (a, b) in sx.iter_mut().zip(&p) {
                *a += c[r] * b;
            }
        }
        let eig_gap = norm(&sub_vec(&sx, &scale_vec(1.0 - c0, x)));
        report.residual("x is an eigenvector of the scaled Riesz operator with eigenvalue 1 - c_0", eig_gap, T, Necessary);

        let inner = max_of(sigma.iter().map(|&j| (dot(&ex.components[j], x) - (1.0 - c[j]) / c0).abs()));
        report.residual("<x_j, x> = (1 - c_j) / c_0 on the support", inner, T, Necessary);
        let cross = max_of(sigma.iter().flat_map(|&j| {
            let c = &c;
            (0..m).filter(move |&i| i != j).map(move |i| {
                let lhs = project(&w[i], &ex.components[j]);
                let rhs = scale_vec((c[j] - 1.0) / c[i], &ex.components[i]);
                norm(&sub_vec(&lhs, &rhs))
            })
        }));
        report.residual("P_i x_j = (c_j - 1) / c_i x_i on the support", cross, T, Necessary);
        report.residual("c_j = 1 off the support", max_of(off.iter().map(|&j| (c[j] - 1.0).abs())), T, Necessary);
        let away = min_of(sigma.iter().map(|&j| (c[j] - 1.0).abs()));
        report.push("c_j != 1 on the support", away > T, away, Necessary);
    } else {
        report.notes.push(String::from("coefficient-dependent conditions skipped: solver found no strictly positive weights"));
    }

    let orthogonal = report.residual("Riesz part orthogonal", dec.riesz_overlap(), T, Hypothesis);
    let line = frame.subspace(carrier);
    let generated = min_of(w.iter().map(|wj| wj.distance(line).unwrap_or(f64::INFINITY)));
    let gen_holds = report.residual("excess element generates a Riesz subspace", generated, T, Hypothesis);

    let prediction = if !free_ok {
        Prediction::NotScalable
    } else if orthogonal {
        if gen_holds {
            Prediction::Scalable
        } else {
            Prediction::NotScalable
        }
    } else {
        Prediction::Undetermined
    };
    report.conclude(prediction);
    Ok(report)
}

/// Characterization of scalable 1-excess frames: a strictly scalable
/// 1-excess ordinary frame on `H_1 = span{x, x_i}` plus an orthogonal family
/// spanning the complement.
pub fn check_one_excess_structure(
    frame: &FusionFrame,
    dec: &ExcessDecomposition,
    sol: &ScalingSolution,
    cfg: &ToleranceConfig,
) -> Result<TheoremReport> {
    check_len(frame, sol)?;
    let dec = dec.resolve(frame, cfg)?;
    if dec.excess.len() != 1 {
        return Err(Error::MalformedDecomposition(format!("expected one excess vector, found {}", dec.excess.len())));
    }
    let mut report = TheoremReport::new(TheoremId::OneExcessStructure.as_str(), sol.status);
    with_resolved(&dec, &mut report);

    let ex = &dec.excess[0];
    if let Carrier::Hosted(r) = ex.carrier {
        let dim = frame.subspace(dec.riesz[r]).dim();
        report.push("excess element spans a one-dimensional item", false, dim as f64, Necessary);
        report.conclude(Prediction::NotScalable);
        return Ok(report);
    }
    report.push("excess element spans a one-dimensional item", true, 1.0, Necessary);

    let m = dec.riesz_len();
    let n = dec.ambient_dim;
    let w = &dec.riesz_subspaces;
    let sigma = dec.support(0);
    let off: Vec<usize> = (0..m).filter(|r| !sigma.contains(r)).collect();

    let mut ok = true;
    let max_dim = sigma.iter().map(|&j| w[j].dim()).max().unwrap_or(1);
    ok &= report.push("dim W_j = 1 on the support", max_dim == 1, max_dim as f64, Necessary);

    let mut gens = vec![ex.vector.clone()];
    gens.extend(sigma.iter().map(|&j| ex.components[j].clone()));
    let h1 = Subspace::from_vectors(&gens, cfg.rank_tol)?;
    let slack = gens.len() as f64 - 1.0 - h1.dim() as f64;
    ok &= report.push("{x, x_i} is a 1-excess frame of its span", slack == 0.0, slack, Necessary);

    let mut mutual: f64 = 0.0;
    for (a, &i) in off.iter().enumerate() {
        for &j in &off[a + 1..] {
            mutual = mutual.max(w[i].overlap(&w[j])?);
        }
    }
    ok &= report.residual("off-support subspaces mutually orthogonal", mutual, T, Necessary);
    let to_h1 = max_of(off.iter().map(|&j| w[j].overlap(&h1).unwrap_or(f64::INFINITY)));
    ok &= report.residual("off-support subspaces orthogonal to H_1", to_h1, T, Necessary);

    // Solve the ordinary frame {x, x_i / |x_i|} in coordinates of H_1.
    let coords = |v: &[f64]| h1.coordinates(v).expect("ambient dimension matches");
    let mut lines = vec![Subspace::from_vectors(&[coords(&ex.vector)], cfg.rank_tol)?];
    for &j in &sigma {
        lines.push(Subspace::from_vectors(&[coords(&ex.components[j])], cfg.rank_tol)?);
    }
    let local = FusionFrame::new(lines.into_iter().map(|s| FrameItem::new(s, 1.0)).collect())?;
    let local_cfg = ToleranceConfig::new(cfg.residual_tol * h1.dim() as f64 / n as f64, cfg.rank_tol, cfg.positivity_eps)?;
    let local_sol = solve_scaling(&local, &local_cfg)?;
    ok &= report.push(
        "support frame strictly scalable in H_1",
        local_sol.status.is_strict(),
        local_sol.min_coefficient.min(-local_sol.residual).max(local_sol.min_coefficient),
        Necessary,
    );

    report.conclude(if ok { Prediction::Scalable } else { Prediction::NotScalable });
    Ok(report)
}

struct TwoHosts {
    h1: usize,
    h2: usize,
}

fn two_hosts(dec: &ResolvedDecomposition) -> Result<TwoHosts> {
    if dec.excess.len() != 2 {
        return Err(Error::MalformedDecomposition(format!("expected two excess vectors, found {}", dec.excess.len())));
    }
    let (Carrier::Hosted(h1), Carrier::Hosted(h2)) = (dec.excess[0].carrier, dec.excess[1].carrier) else {
        return Err(Error::MalformedDecomposition(String::from("both excess vectors must be adjoined to Riesz subspaces")));
    };
    if h1 == h2 {
        return Err(Error::MalformedDecomposition(String::from("excess vectors must be adjoined to distinct subspaces")));
    }
    if dec.excess[0].component_norm(h1) > T || dec.excess[1].component_norm(h2) > T {
        return Err(Error::MalformedDecomposition(String::from("an excess vector has a component in its own host")));
    }
    Ok(TwoHosts { h1, h2 })
}

/// Two excess elements adjoined to distinct subspaces `V_l = W_l + span{x_l}`.
pub fn check_two_excess(
    frame: &FusionFrame,
    dec: &ExcessDecomposition,
    sol: &ScalingSolution,
    cfg: &ToleranceConfig,
) -> Result<TheoremReport> {
    check_len(frame, sol)?;
    let dec = dec.resolve(frame, cfg)?;
    let TwoHosts { h1, h2 } = two_hosts(&dec)?;
    let mut report = TheoremReport::new(TheoremId::TwoExcess.as_str(), sol.status);
    with_resolved(&dec, &mut report);

    let m = dec.riesz_len();
    let w = &dec.riesz_subspaces;
    let (xe, ye) = (&dec.excess[0], &dec.excess[1]);
    let (x, y) = (&xe.vector, &ye.vector);
    let x2 = &xe.components[h2];
    let y1 = &ye.components[h1];
    let rest: Vec<usize> = (0..m).filter(|&i| i != h1 && i != h2).collect();

    let mut free_ok = true;
    free_ok &= report.push("dim W_1 = 1", w[h1].dim() == 1, w[h1].dim() as f64, Necessary);
    free_ok &= report.push("dim W_2 = 1", w[h2].dim() == 1, w[h2].dim() as f64, Necessary);
    free_ok &= report.residual("W_1 orthogonal to W_2", w[h1].overlap(&w[h2])?, T, Necessary);
    free_ok &= report.push("x_2 != 0", norm(x2) > T, norm(x2), Necessary);
    free_ok &= report.push("y_1 != 0", norm(y1) > T, norm(y1), Necessary);
    free_ok &= report.residual("<x, y> = 0", dot(x, y).abs(), T, Necessary);
    let nx2 = dot(x2, x2);
    let ny1 = dot(y1, y1);
    free_ok &= report.residual("|x_2|^2 |y_1|^2 = 1", (nx2 * ny1 - 1.0).abs(), T, Necessary);

    if sol.status.is_strict() {
        let c = c_riesz(&dec, sol);
        let (c1, c2) = (c[h1], c[h2]);
        let eq1 = max_of((0..m).filter(|&i| i != h1).map(|i| {
            norm(&sub_vec(&project(&w[i], x), &scale_vec((1.0 - c1) / c[i], &xe.components[i])))
        }));
        report.residual("P_i x = (1 - c_1) / c_i x_i", eq1, T, Necessary);
        let eq2 = max_of((0..m).filter(|&i| i != h2).map(|i| {
            norm(&sub_vec(&project(&w[i], y), &scale_vec((1.0 - c2) / c[i], &ye.components[i])))
        }));
        report.residual("P_i y = (1 - c_2) / c_i y_i", eq2, T, Necessary);
        let away = (c1 - 1.0).abs().min((c2 - 1.0).abs());
        report.push("c_1 != 1 and c_2 != 1", away > T, away, Necessary);

        report.residual("<x_2, x> = (1 - c_2) / c_1", (dot(x2, x) - (1.0 - c2) / c1).abs(), T, Necessary);
        let eq4 = max_of(rest.iter().map(|&i| {
            norm(&sub_vec(&project(&w[i], x2), &scale_vec((c2 - 1.0) / c[i], &xe.components[i])))
        }));
        report.residual("P_i x_2 = (c_2 - 1) / c_i x_i", eq4, T, Necessary);
        report.residual("<y_1, y> = (1 - c_1) / c_2", (dot(y1, y) - (1.0 - c1) / c2).abs(), T, Necessary);
        let eq5 = max_of(rest.iter().map(|&i| {
            norm(&sub_vec(&project(&w[i], y1), &scale_vec((c1 - 1.0) / c[i], &ye.components[i])))
        }));
        report.residual("P_i y_1 = (c_1 - 1) / c_i y_i", eq5, T, Necessary);

        let ratio = c2 * (1.0 - c2) / (c1 * (1.0 - c1));
        let gap6 = (nx2 - ratio).abs().max((1.0 / ny1 - ratio).abs());
        report.residual("|x_2|^2 = |y_1|^-2 = c_2 (1 - c_2) / (c_1 (1 - c_1))", gap6, T, Necessary);
        let sum = c1 + c2;
        report.push("c_1 + c_2 >= 1", sum - 1.0 >= -T, sum - 1.0, Necessary);
        report.push("c_1 + c_2 < 2", 2.0 - sum > T, 2.0 - sum, Necessary);
        report.residual("excess identity", dec.identity_residual(&c, &c_excess(&dec, sol)), T, Necessary);
    } else {
        report.notes.push(String::from("coefficient-dependent conditions skipped: solver found no strictly positive weights"));
    }

    let x_rest = max_of(rest.iter().map(|&i| xe.component_norm(i)));
    let y_rest = max_of(rest.iter().map(|&i| ye.component_norm(i)));
    let lopsided = (x_rest <= T && y_rest > T) || (y_rest <= T && x_rest > T);
    report.push(
        "one excess vector lives on the two hosts while the other does not",
        lopsided,
        (x_rest - y_rest).abs(),
        Hypothesis,
    );

    let x_in_w2 = max_of((0..m).filter(|&i| i != h2).map(|i| xe.component_norm(i)));
    let y_in_w1 = max_of((0..m).filter(|&i| i != h1).map(|i| ye.component_norm(i)));
    let crossed = report.residual("x in W_2 and y in W_1", x_in_w2.max(y_in_w1), T, Hypothesis);
    let mut prediction = if !free_ok || lopsided { Prediction::NotScalable } else { Prediction::Undetermined };
    if crossed && prediction == Prediction::Undetermined {
        let xy = Subspace::from_vectors(&[x.clone(), y.clone()], cfg.rank_tol)?;
        let v1 = frame.subspace(dec.riesz[h1]);
        let v2 = frame.subspace(dec.riesz[h2]);
        let same = v1.distance(&xy)?.max(v2.distance(&xy)?);
        if report.residual("V_1 = V_2 = span{x, y}", same, T, Necessary) {
            let rest_orth = max_of(rest.iter().map(|&i| {
                rest.iter().filter(|&&j| j > i).map(|&j| w[i].overlap(&w[j]).unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
            }));
            let v1_rest = max_of(rest.iter().map(|&i| v1.overlap(&w[i]).unwrap_or(f64::INFINITY)));
            if report.residual("remaining subspaces orthogonal and orthogonal to V_1", rest_orth.max(v1_rest), T, Hypothesis) {
                prediction = Prediction::Scalable;
            }
        } else {
            prediction = Prediction::NotScalable;
        }
    }
    report.conclude(prediction);
    Ok(report)
}

/// In `R^3`, a scalable frame with two adjoined excess elements has an
/// orthogonal Riesz part.
pub fn check_two_excess_h3_orthogonality(
    frame: &FusionFrame,
    dec: &ExcessDecomposition,
    sol: &ScalingSolution,
    cfg: &ToleranceConfig,
) -> Result<TheoremReport> {
    check_len(frame, sol)?;
    if frame.ambient_dim() != 3 {
        return Err(Error::WrongAmbientDimension { expected: 3, found: frame.ambient_dim() });
    }
    let dec = dec.resolve(frame, cfg)?;
    if dec.excess.len() != 2 {
        return Err(Error::MalformedDecomposition(format!("expected two excess vectors, found {}", dec.excess.len())));
    }
    let mut report = TheoremReport::new(TheoremId::TwoExcessH3.as_str(), sol.status);
    with_resolved(&dec, &mut report);

    let adjoined = dec.standalone.is_empty();
    let role = if adjoined { Necessary } else { Hypothesis };
    if !adjoined {
        report.notes.push(String::from("excess carried by standalone items; orthogonality is not implied"));
    }
    let orthogonal = report.residual("Riesz part orthogonal", dec.riesz_overlap(), T, role);
    if orthogonal {
        report.notes.push(String::from("orthogonality alone does not imply scalability"));
    }
    report.conclude(if adjoined && !orthogonal { Prediction::NotScalable } else { Prediction::Undetermined });
    Ok(report)
}

/// Frames with several excess elements: the excess identity, the
/// single-host obstruction, repeated subspaces and orthogonal Riesz parts.
pub fn check_k_excess(
    frame: &FusionFrame,
    dec: &ExcessDecomposition,
    sol: &ScalingSolution,
    cfg: &ToleranceConfig,
) -> Result<TheoremReport> {
    check_len(frame, sol)?;
    let dec = dec.resolve(frame, cfg)?;
    if dec.excess.is_empty() {
        return Err(Error::MalformedDecomposition(String::from("no excess vectors declared")));
    }
    let mut report = TheoremReport::new(TheoremId::KExcess.as_str(), sol.status);
    with_resolved(&dec, &mut report);
    let w = &dec.riesz_subspaces;
    let m = dec.riesz_len();

    let orthonormal = dec.carriers_orthonormal();
    if sol.status.is_strict() && orthonormal {
        let c = c_riesz(&dec, sol);
        report.residual("excess identity", dec.identity_residual(&c, &c_excess(&dec, sol)), T, Necessary);
    } else if !orthonormal {
        report.notes.push(String::from("excess identity skipped: vectors sharing a carrier are not orthogonal"));
    }

    let hosts = dec.hosts();
    let single_host = dec.standalone.is_empty() && hosts.len() == 1;
    report.push("all excess vectors adjoined to one subspace", single_host, hosts.len() as f64, Hypothesis);
    let mut prediction = if single_host { Prediction::NotScalable } else { Prediction::Undetermined };

    let orthogonal = dec.riesz_overlap() <= T;
    if hosts.is_empty() {
        // Which Riesz subspace, if any, each standalone carrier repeats.
        let repeats: Vec<Option<usize>> = dec
            .standalone
            .iter()
            .map(|&i| (0..m).find(|&r| w[r].same_as(frame.subspace(i), T).unwrap_or(false)))
            .collect();
        let all_repeat = repeats.iter().all(Option::is_some);
        let first = repeats.first().copied().flatten();
        let same_target = all_repeat && repeats.iter().all(|&r| r == first);

        if same_target {
            let l = first.expect("at least one carrier");
            let copies = dec.standalone.len();
            report.notes.push(format!("Riesz subspace {l} repeated {copies} more time(s)"));
            let unit = vec![1.0; m];
            let riesz_frame =
                FusionFrame::new(w.iter().map(|s| FrameItem::new(s.clone(), 1.0)).collect())?;
            let unit_ok = coefficient_residual(&riesz_frame, &unit)? <= T;
            let mut closed = vec![1.0; frame.len()];
            closed[dec.riesz[l]] = 1.0 / (copies as f64 + 1.0);
            for &i in &dec.standalone {
                closed[i] = 1.0 / (copies as f64 + 1.0);
            }
            let closed_res = coefficient_residual(frame, &closed)?;
            let closed_ok = closed_res <= T;
            let strict = sol.status.is_strict();
            let agree = unit_ok == orthogonal && orthogonal == closed_ok && closed_ok == strict;
            report.push("Riesz part scalable with unit weights", unit_ok, if unit_ok { 0.0 } else { 1.0 }, Hypothesis);
            report.push("Riesz part orthogonal", orthogonal, dec.riesz_overlap(), Hypothesis);
            report.push("closed-form weights 1/(copies+1) scale the frame", closed_ok, closed_res, Hypothesis);
            report.push("repeated-subspace equivalence", agree, if agree { 0.0 } else { 1.0 }, Necessary);
            if strict {
                let split = max_of(
                    dec.standalone
                        .iter()
                        .chain(core::iter::once(&dec.riesz[l]))
                        .map(|&i| (sol.c(i) - 1.0 / (copies as f64 + 1.0)).abs()),
                );
                report.notes.push(format!("solver coefficients differ from the closed form by {split:.3e}"));
            }
            prediction = if orthogonal { Prediction::Scalable } else { Prediction::NotScalable };
            report.conclude(prediction);
            report.verdict_consistent_with_solver &= agree;
            return Ok(report);
        }

        let covered = orthogonal && all_repeat;
        report.push("orthogonal Riesz part and every carrier is a Riesz subspace", covered, dec.riesz_overlap(), Hypothesis);
        if covered {
            prediction = Prediction::Scalable;
        }
    }
    report.conclude(prediction);
    Ok(report)
}

/// Two hosts exchanging excess: `V_1 = W_1 + Z_2`, `V_2 = W_2 + Z_1`.
pub fn check_swap_structure(
    frame: &FusionFrame,
    dec: &ExcessDecomposition,
    sol: &ScalingSolution,
    cfg: &ToleranceConfig,
) -> Result<TheoremReport> {
    check_len(frame, sol)?;
    let dec = dec.resolve(frame, cfg)?;
    let hosts = dec.hosts();
    if hosts.len() != 2 || !dec.standalone.is_empty() {
        return Err(Error::MalformedDecomposition(String::from(
            "expected excess adjoined to exactly two subspaces and no standalone items",
        )));
    }
    let mut report = TheoremReport::new(TheoremId::SwapStructure.as_str(), sol.status);
    with_resolved(&dec, &mut report);
    let (h1, h2) = (hosts[0], hosts[1]);
    let m = dec.riesz_len();
    let w = &dec.riesz_subspaces;
    let rest: Vec<usize> = (0..m).filter(|&i| i != h1 && i != h2).collect();
    let v1 = frame.subspace(dec.riesz[h1]);
    let v2 = frame.subspace(dec.riesz[h2]);
    let on1 = dec.hosted_at(h1);
    let on2 = dec.hosted_at(h2);

    let excess = &dec.excess;
    let only_in = |es: &[usize], target: usize| {
        max_of(es.iter().flat_map(|&e| (0..m).filter(move |&r| r != target).map(move |r| excess[e].component_norm(r))))
    };
    let swap_gap = only_in(&on1, h2).max(only_in(&on2, h1));
    let pure = report.residual("hosted vectors lie in the other host's subspace", swap_gap, T, Hypothesis);

    // The two-host conditions need every hosted vector to have no Riesz
    // component in its own host, on top of being orthogonal to it.
    let own = max_of(on1.iter().map(|&e| excess[e].component_norm(h1)).chain(on2.iter().map(|&e| excess[e].component_norm(h2))));
    let clean = report.residual("hosted vectors have no component in their own host", own, T, Hypothesis);
    let role = if clean { Necessary } else { Hypothesis };
    if !clean {
        report.notes.push(String::from("two-host orthogonality and dimension conditions recorded but not implied"));
    }
    let orth12 = report.residual("W_1 orthogonal to W_2", w[h1].overlap(&w[h2])?, T, role);
    let mut free_ok = orth12 || !clean;
    let mut full_swap = false;
    if pure {
        let span = |es: &[usize]| {
            let vs: Vec<Vec<f64>> = es.iter().map(|&e| dec.excess[e].vector.clone()).collect();
            Subspace::from_vectors(&vs, cfg.rank_tol)
        };
        let z2 = span(&on1)?;
        let z1 = span(&on2)?;
        let z1_ok = report.residual("Z_1 = W_1", z1.distance(&w[h1])?, T, Necessary);
        let z2_ok = report.residual("Z_2 = W_2", z2.distance(&w[h2])?, T, Necessary);
        full_swap = z1_ok && z2_ok;
        free_ok &= full_swap;
    }

    if sol.status.is_strict() {
        let (c1, c2) = (sol.c(dec.riesz[h1]), sol.c(dec.riesz[h2]));
        if pure {
            report.residual("c_1 + c_2 = 1", (c1 + c2 - 1.0).abs(), T, Necessary);
        }
        let w_rest = |r: usize| max_of(rest.iter().map(|&i| w[r].overlap(&w[i]).unwrap_or(f64::INFINITY)));
        if (c1 - 1.0).abs() <= T {
            report.residual("c_1 = 1 implies c_2 = 1", (c2 - 1.0).abs(), T, role);
            report.residual("c_1 = 1 implies V_1 orthogonal to W_2", v1.overlap(&w[h2])?, T, role);
            report.residual("c_1 = 1 implies W_2 orthogonal to the rest", w_rest(h2), T, role);
        } else {
            let slack = on2.len() as f64 - w[h1].dim() as f64;
            report.push("dim W_1 <= dim V_2 - dim W_2", slack >= 0.0, slack, role);
        }
        if (c2 - 1.0).abs() <= T {
            report.residual("c_2 = 1 implies c_1 = 1", (c1 - 1.0).abs(), T, role);
            report.residual("c_2 = 1 implies V_2 orthogonal to W_1", v2.overlap(&w[h1])?, T, role);
            report.residual("c_2 = 1 implies W_1 orthogonal to the rest", w_rest(h1), T, role);
        } else {
            let slack = on1.len() as f64 - w[h2].dim() as f64;
            report.push("dim W_2 <= dim V_1 - dim W_1", slack >= 0.0, slack, role);
        }
    } else {
        report.notes.push(String::from("coefficient-dependent conditions skipped: solver found no strictly positive weights"));
    }

    let mut prediction = if free_ok { Prediction::Undetermined } else { Prediction::NotScalable };
    if full_swap && free_ok {
        let mut worst: f64 = 0.0;
        for (a, &i) in rest.iter().enumerate() {
            for &j in &rest[a + 1..] {
                worst = worst.max(w[i].overlap(&w[j])?);
            }
            worst = worst.max(w[i].overlap(&w[h1])?).max(w[i].overlap(&w[h2])?);
        }
        if report.residual("remaining subspaces orthogonal and orthogonal to W_1 + W_2", worst, T, Hypothesis) {
            prediction = Prediction::Scalable;
        }
    }
    report.conclude(prediction);
    Ok(report)
}
