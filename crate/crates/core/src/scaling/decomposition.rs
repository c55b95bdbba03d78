use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fusion::{FrameItem, FusionFrame};
use crate::numerics::{add_vec, norm, scale_vec, sub_vec, DenseMatrix};
use crate::subspace::Subspace;
use crate::tolerance::{ToleranceConfig, THEOREM_TOL};

/// One declared excess element `x = sum_i x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcessSpec {
    pub vector: Vec<f64>,
    /// Frame item that carries `x`.
    ///
    /// If the item belongs to the Riesz part, `x` is adjoined to it
    /// (`V_l = W_l + span{x}`). Otherwise the item is a standalone carrier
    /// spanned by its excess vectors. `None` picks the first free
    /// one-dimensional item equal to `span{x}`.
    pub host: Option<usize>,
    /// `(frame item index of W_i, x_i)`. Left empty, the components are
    /// computed from the Riesz decomposition.
    pub components: Vec<(usize, Vec<f64>)>,
}

impl ExcessSpec {
    pub fn new(vector: Vec<f64>, host: Option<usize>) -> Self {
        Self { vector, host, components: Vec::new() }
    }

    pub fn with_components(vector: Vec<f64>, host: Option<usize>, components: Vec<(usize, Vec<f64>)>) -> Self {
        Self { vector, host, components }
    }
}

/// A split of a fusion frame into a Riesz part and excess elements.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcessDecomposition {
    /// Frame item indices of the Riesz part, in Riesz order.
    pub riesz: Vec<usize>,
    pub excess: Vec<ExcessSpec>,
}

/// Where an excess vector lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    /// Adjoined to the Riesz subspace at this Riesz position.
    Hosted(usize),
    /// Spans (part of) this standalone frame item.
    Standalone(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedExcess {
    /// Unit-norm excess vector.
    pub vector: Vec<f64>,
    pub carrier: Carrier,
    /// `x_i` per Riesz position, scaled with the vector.
    pub components: Vec<Vec<f64>>,
}

impl ResolvedExcess {
    pub fn component_norm(&self, r: usize) -> f64 {
        norm(&self.components[r])
    }
}

/// A validated [`ExcessDecomposition`] with the derived Riesz subspaces.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedDecomposition {
    pub ambient_dim: usize,
    /// Frame item index per Riesz position.
    pub riesz: Vec<usize>,
    /// `W_r`: the item itself, or for hosts the orthogonal complement of the
    /// hosted vectors inside the item.
    pub riesz_subspaces: Vec<Subspace>,
    pub excess: Vec<ResolvedExcess>,
    /// Frame item indices that are standalone carriers.
    pub standalone: Vec<usize>,
    pub notes: Vec<String>,
}

const SUPPORT_TOL: f64 = 1e-9;

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedDecomposition(msg.into())
}

impl ExcessDecomposition {
    /// Maps every declared vector through `m`, matching
    /// [`FusionFrame::transformed`]. Hosts and indices are kept.
    pub fn transformed(&self, m: &DenseMatrix) -> Result<Self> {
        let excess = self
            .excess
            .iter()
            .map(|spec| {
                let components = spec
                    .components
                    .iter()
                    .map(|(i, v)| Ok((*i, m.mul_vec(v)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ExcessSpec { vector: m.mul_vec(&spec.vector)?, host: spec.host, components })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { riesz: self.riesz.clone(), excess })
    }

    /// Checks the decomposition against `frame` and derives the Riesz part.
    pub fn resolve(&self, frame: &FusionFrame, cfg: &ToleranceConfig) -> Result<ResolvedDecomposition> {
        let n = frame.ambient_dim();
        let k = frame.len();
        let mut notes = Vec::new();

        let mut riesz_pos = vec![None; k];
        for (r, &i) in self.riesz.iter().enumerate() {
            if i >= k {
                return Err(malformed(format!("Riesz index {i} out of range")));
            }
            if riesz_pos[i].is_some() {
                return Err(malformed(format!("Riesz index {i} listed twice")));
            }
            riesz_pos[i] = Some(r);
        }
        if self.riesz.is_empty() {
            return Err(malformed("empty Riesz part"));
        }

        // Normalize vectors and assign carriers.
        let mut vectors = Vec::with_capacity(self.excess.len());
        let mut scales = Vec::with_capacity(self.excess.len());
        for (e, spec) in self.excess.iter().enumerate() {
            if spec.vector.len() != n {
                return Err(malformed(format!("excess vector {e} has length {}, expected {n}", spec.vector.len())));
            }
            let len = norm(&spec.vector);
            if !(len > 0.0) || !len.is_finite() {
                return Err(malformed(format!("excess vector {e} is zero")));
            }
            if (len - 1.0).abs() > 1e-12 {
                notes.push(format!("excess vector {e} normalized from norm {len:.6e}"));
            }
            vectors.push(scale_vec(1.0 / len, &spec.vector));
            scales.push(1.0 / len);
        }

        let mut carriers = vec![Carrier::Hosted(0); self.excess.len()];
        let mut used_standalone = vec![false; k];
        for (e, spec) in self.excess.iter().enumerate() {
            if let Some(h) = spec.host {
                if h >= k {
                    return Err(malformed(format!("host {h} of excess vector {e} out of range")));
                }
                carriers[e] = match riesz_pos[h] {
                    Some(r) => Carrier::Hosted(r),
                    None => {
                        used_standalone[h] = true;
                        Carrier::Standalone(h)
                    }
                };
            }
        }
        for (e, spec) in self.excess.iter().enumerate() {
            if spec.host.is_some() {
                continue;
            }
            let line = Subspace::from_vectors(&[vectors[e].clone()], cfg.rank_tol)?;
            let found = (0..k).find(|&i| {
                riesz_pos[i].is_none()
                    && !used_standalone[i]
                    && frame.subspace(i).dim() == 1
                    && frame.subspace(i).distance(&line).map_or(false, |d| d <= THEOREM_TOL)
            });
            let Some(i) = found else {
                return Err(malformed(format!("no free one-dimensional item spans excess vector {e}")));
            };
            used_standalone[i] = true;
            carriers[e] = Carrier::Standalone(i);
        }

        for i in 0..k {
            if riesz_pos[i].is_none() && !used_standalone[i] {
                return Err(malformed(format!("item {i} is neither in the Riesz part nor carries excess")));
            }
        }

        // Standalone carriers must be spanned by their vectors.
        let mut standalone = Vec::new();
        for i in 0..k {
            if !used_standalone[i] {
                continue;
            }
            standalone.push(i);
            let own: Vec<Vec<f64>> = (0..vectors.len())
                .filter(|&e| carriers[e] == Carrier::Standalone(i))
                .map(|e| vectors[e].clone())
                .collect();
            let span = Subspace::from_vectors(&own, cfg.rank_tol)?;
            if span.dim() != own.len() {
                return Err(malformed(format!("excess vectors carried by item {i} are dependent")));
            }
            if !span.same_as(frame.subspace(i), THEOREM_TOL)? {
                return Err(malformed(format!("item {i} is not spanned by its excess vectors")));
            }
        }

        // Derive W_r for hosts.
        let mut riesz_subspaces = Vec::with_capacity(self.riesz.len());
        for (r, &i) in self.riesz.iter().enumerate() {
            let v = frame.subspace(i);
            let hosted: Vec<Vec<f64>> = (0..vectors.len())
                .filter(|&e| carriers[e] == Carrier::Hosted(r))
                .map(|e| vectors[e].clone())
                .collect();
            if hosted.is_empty() {
                riesz_subspaces.push(v.clone());
                continue;
            }
            for (j, h) in hosted.iter().enumerate() {
                if !v.contains(h, THEOREM_TOL)? {
                    return Err(malformed(format!("hosted vector {j} of item {i} does not lie in it")));
                }
            }
            let hosted_span = Subspace::from_vectors(&hosted, cfg.rank_tol)?;
            if hosted_span.dim() != hosted.len() {
                return Err(malformed(format!("vectors hosted by item {i} are dependent")));
            }
            let w = v
                .complement_of(&hosted_span, cfg.rank_tol)?
                .ok_or_else(|| malformed(format!("item {i} has no Riesz piece left after removing hosted vectors")))?;
            if w.dim() + hosted.len() != v.dim() {
                return Err(malformed(format!("item {i} does not split as Riesz piece plus hosted vectors")));
            }
            riesz_subspaces.push(w);
        }

        let riesz_frame = FusionFrame::new(
            self.riesz
                .iter()
                .zip(&riesz_subspaces)
                .map(|(&i, w)| FrameItem::new(w.clone(), frame.item(i).weight))
                .collect(),
        )?;
        if !riesz_frame.is_riesz_basis(cfg) {
            return Err(malformed("declared Riesz part is not a Riesz basis"));
        }

        let frame_excess = frame.excess(cfg.rank_tol).excess;
        if frame_excess != vectors.len() {
            return Err(malformed(format!(
                "{} excess vectors declared but the frame has excess {frame_excess}",
                vectors.len()
            )));
        }

        // Components.
        let mut excess = Vec::with_capacity(vectors.len());
        for (e, spec) in self.excess.iter().enumerate() {
            let x = &vectors[e];
            let components = if spec.components.is_empty() {
                riesz_frame.riesz_decompose(x, cfg)?
            } else {
                let mut comps = vec![vec![0.0; n]; self.riesz.len()];
                let mut seen = vec![false; self.riesz.len()];
                for (item, v) in &spec.components {
                    let Some(r) = riesz_pos.get(*item).copied().flatten() else {
                        return Err(malformed(format!("component of excess vector {e} names non-Riesz item {item}")));
                    };
                    if v.len() != n {
                        return Err(malformed(format!("component of excess vector {e} has wrong length")));
                    }
                    if seen[r] {
                        return Err(malformed(format!("excess vector {e} lists item {item} twice")));
                    }
                    seen[r] = true;
                    let scaled = scale_vec(scales[e], v);
                    let off = norm(&sub_vec(&scaled, &riesz_subspaces[r].project(&scaled)?));
                    if off > THEOREM_TOL * norm(&scaled).max(1.0) {
                        return Err(malformed(format!("component {item} of excess vector {e} is not in its subspace")));
                    }
                    comps[r] = scaled;
                }
                let total = comps.iter().fold(vec![0.0; n], |acc, c| add_vec(&acc, c));
                let gap = norm(&sub_vec(&total, x));
                if gap > THEOREM_TOL {
                    return Err(malformed(format!("components of excess vector {e} miss it by {gap:.3e}")));
                }
                comps
            };
            excess.push(ResolvedExcess { vector: x.clone(), carrier: carriers[e], components });
        }

        Ok(ResolvedDecomposition {
            ambient_dim: n,
            riesz: self.riesz.clone(),
            riesz_subspaces,
            excess,
            standalone,
            notes,
        })
    }
}

impl ResolvedDecomposition {
    pub fn riesz_len(&self) -> usize {
        self.riesz.len()
    }

    /// Riesz positions where `x_r != 0`.
    pub fn support(&self, e: usize) -> Vec<usize> {
        (0..self.riesz_len()).filter(|&r| self.excess[e].component_norm(r) > SUPPORT_TOL).collect()
    }

    /// Indices of excess vectors hosted at Riesz position `r`.
    pub fn hosted_at(&self, r: usize) -> Vec<usize> {
        (0..self.excess.len()).filter(|&e| self.excess[e].carrier == Carrier::Hosted(r)).collect()
    }

    /// Riesz positions that host at least one vector.
    pub fn hosts(&self) -> Vec<usize> {
        (0..self.riesz_len()).filter(|&r| !self.hosted_at(r).is_empty()).collect()
    }

    /// Excess vectors carried by standalone item `i`.
    pub fn carried_by(&self, i: usize) -> Vec<usize> {
        (0..self.excess.len()).filter(|&e| self.excess[e].carrier == Carrier::Standalone(i)).collect()
    }

    /// Frame item index carrying excess vector `e`.
    pub fn carrier_item(&self, e: usize) -> usize {
        match self.excess[e].carrier {
            Carrier::Hosted(r) => self.riesz[r],
            Carrier::Standalone(i) => i,
        }
    }

    /// Largest `||W_r^T W_s||_F` over distinct Riesz positions.
    pub fn riesz_overlap(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.riesz_len() {
            for s in (r + 1)..self.riesz_len() {
                worst = worst.max(self.riesz_subspaces[r].overlap(&self.riesz_subspaces[s]).unwrap_or(f64::INFINITY));
            }
        }
        worst
    }

    /// Largest overlap between `W_r` and the other Riesz subspaces.
    pub fn overlap_with_others(&self, r: usize) -> f64 {
        (0..self.riesz_len())
            .filter(|&s| s != r)
            .map(|s| self.riesz_subspaces[r].overlap(&self.riesz_subspaces[s]).unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    /// Residual of the excess identity
    /// `sum_l c_l <P_j f, x_l> (x_l)_i = (delta_ij - c_i P_i) P_j f`
    /// over all Riesz positions `i, j` and `f = e_1..e_n`.
    ///
    /// `c_riesz[r]` is the coefficient of Riesz position `r`, `c_excess[l]`
    /// that of the item carrying excess vector `l`.
    pub fn identity_residual(&self, c_riesz: &[f64], c_excess: &[f64]) -> f64 {
        let n = self.ambient_dim;
        let m = self.riesz_len();
        let projectors: Vec<DenseMatrix> = self.riesz_subspaces.iter().map(Subspace::projector).collect();
        let mut worst: f64 = 0.0;
        for j in 0..m {
            for f in 0..n {
                let pjf = projectors[j].column(f);
                for i in 0..m {
                    let mut lhs = vec![0.0; n];
                    for (l, ex) in self.excess.iter().enumerate() {
                        let coef = c_excess[l] * crate::numerics::dot(&pjf, &ex.vector);
                        for (a, b) in lhs.iter_mut().zip(&ex.components[i]) {
                            *a += coef * b;
                        }
                    }
                    let pi_pjf = projectors[i].mul_vec(&pjf).expect("square projector");
                    let delta = if i == j { 1.0 } else { 0.0 };
                    let rhs: Vec<f64> = pjf.iter().zip(&pi_pjf).map(|(a, b)| delta * a - c_riesz[i] * b).collect();
                    worst = worst.max(norm(&sub_vec(&lhs, &rhs)));
                }
            }
        }
        worst
    }

    /// Whether the vectors sharing each carrier are mutually orthogonal.
    pub fn carriers_orthonormal(&self) -> bool {
        for a in 0..self.excess.len() {
            for b in (a + 1)..self.excess.len() {
                if self.excess[a].carrier == self.excess[b].carrier
                    && crate::numerics::dot(&self.excess[a].vector, &self.excess[b].vector).abs() > THEOREM_TOL
                {
                    return false;
                }
            }
        }
        true
    }
}
