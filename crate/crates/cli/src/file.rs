//! The JSON frame file format.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "subspaces": [
//!     {"basis": [[1, 0, 0], [0, 1, 0]], "weight": 1, "label": "V1"},
//!     {"basis": [[0, 0, 1]], "weight": 1, "label": "W2"}
//!   ],
//!   "decomposition": {
//!     "riesz": ["V1", "W2"],
//!     "excess": []
//!   }
//! }
//! ```
//!
//! Basis rows are orthonormalized on load. Decomposition entries refer to
//! subspaces by label; an excess vector with `"host": null` is carried by a
//! separate one-dimensional subspace spanned by it.

use std::collections::HashMap;
use std::path::Path;

use fusionscale::fixtures::Fixture;
use fusionscale::scaling::{ExcessDecomposition, ExcessSpec};
use fusionscale::{FrameItem, FusionFrame, Subspace, ToleranceConfig};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub dim: usize,
    pub subspaces: Vec<SubspaceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceEntry {
    pub basis: Vec<Vec<f64>>,
    pub weight: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionEntry {
    pub riesz: Vec<String>,
    pub excess: Vec<ExcessEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExcessEntry {
    pub vector: Vec<f64>,
    #[serde(default)]
    pub host: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub riesz: String,
    pub vector: Vec<f64>,
}

/// Reads and validates a frame file.
pub fn parse_frame_file(path: &Path, cfg: &ToleranceConfig) -> Result<Fixture, CliError> {
    let text = read_text(path)?;
    parse_frame_str(&text, cfg)
}

pub(crate) fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Parses frame-file text. Only `cfg.rank_tol` and, for the decomposition
/// checks, `cfg.residual_tol` are used.
pub fn parse_frame_str(text: &str, cfg: &ToleranceConfig) -> Result<Fixture, CliError> {
    let file: FrameFile = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.into_fixture(cfg)
}

impl FrameFile {
    /// Builds the frame and the checked decomposition.
    pub fn into_fixture(&self, cfg: &ToleranceConfig) -> Result<Fixture, CliError> {
        let n = self.dim;
        if n == 0 {
            return Err(CliError::InvalidSpec("dim must be positive".into()));
        }
        if self.subspaces.is_empty() {
            return Err(CliError::InvalidSpec("a frame needs at least one subspace".into()));
        }
        let mut labels: HashMap<&str, usize> = HashMap::new();
        let mut items = Vec::with_capacity(self.subspaces.len());
        for (i, entry) in self.subspaces.iter().enumerate() {
            let name = entry.label.clone().unwrap_or_else(|| format!("#{}", i + 1));
            if let Some(label) = &entry.label {
                if labels.insert(label, i).is_some() {
                    return Err(CliError::InvalidSpec(format!("duplicate label `{label}`")));
                }
            }
            if !(entry.weight > 0.0) || !entry.weight.is_finite() {
                return Err(CliError::NonpositiveWeight { subspace: name, weight: entry.weight });
            }
            if entry.basis.is_empty() {
                return Err(CliError::InvalidSpec(format!("subspace {name} has no basis rows")));
            }
            if let Some(row) = entry.basis.iter().find(|r| r.len() != n) {
                return Err(CliError::InvalidSpec(format!(
                    "subspace {name}: basis row of length {} in dimension {n}",
                    row.len()
                )));
            }
            let rows = entry.basis.len();
            let subspace = match Subspace::from_vectors(&entry.basis, cfg.rank_tol) {
                Ok(s) if s.dim() == rows => s,
                Ok(s) => return Err(CliError::RankDeficientBasis { subspace: name, rows, rank: s.dim() }),
                Err(fusionscale::Error::ZeroSubspace) => {
                    return Err(CliError::RankDeficientBasis { subspace: name, rows, rank: 0 })
                }
                Err(e) => return Err(e.into()),
            };
            items.push(FrameItem { subspace, weight: entry.weight, label: entry.label.clone() });
        }
        let frame = FusionFrame::new(items)?;
        let decomposition = match &self.decomposition {
            Some(d) => Some(d.resolve_labels(&labels, n)?),
            None => None,
        };
        if let Some(d) = &decomposition {
            d.resolve(&frame, cfg).map_err(|e| CliError::BadDecomposition(e.to_string()))?;
        }
        Ok(Fixture { frame, decomposition })
    }
}

impl DecompositionEntry {
    fn resolve_labels(&self, labels: &HashMap<&str, usize>, n: usize) -> Result<ExcessDecomposition, CliError> {
        let lookup = |label: &str| {
            labels
                .get(label)
                .copied()
                .ok_or_else(|| CliError::BadDecomposition(format!("unknown subspace label `{label}`")))
        };
        let check_len = |v: &[f64]| {
            if v.len() == n {
                Ok(())
            } else {
                Err(CliError::BadDecomposition(format!("vector of length {} in dimension {n}", v.len())))
            }
        };
        let riesz = self.riesz.iter().map(|l| lookup(l)).collect::<Result<Vec<_>, _>>()?;
        let mut excess = Vec::with_capacity(self.excess.len());
        for entry in &self.excess {
            check_len(&entry.vector)?;
            let host = entry.host.as_deref().map(lookup).transpose()?;
            let mut components = Vec::with_capacity(entry.components.len());
            for c in &entry.components {
                check_len(&c.vector)?;
                let item = lookup(&c.riesz)?;
                let r = riesz.iter().position(|&i| i == item).ok_or_else(|| {
                    CliError::BadDecomposition(format!("component on `{}`, which is not in the Riesz part", c.riesz))
                })?;
                components.push((r, c.vector.clone()));
            }
            excess.push(ExcessSpec::with_components(entry.vector.clone(), host, components));
        }
        Ok(ExcessDecomposition { riesz, excess })
    }
}

/// The file describing `fixture`, with orthonormal basis rows.
pub fn emit_frame_file(fixture: &Fixture) -> Result<FrameFile, CliError> {
    let frame = &fixture.frame;
    let subspaces: Vec<SubspaceEntry> = frame
        .items()
        .iter()
        .map(|item| SubspaceEntry {
            basis: item.subspace.basis_vectors(),
            weight: item.weight,
            label: item.label.clone(),
        })
        .collect();
    let label_of = |i: usize| -> Result<String, CliError> {
        let label = frame.item(i).label.clone().ok_or_else(|| {
            CliError::InvalidSpec(format!("subspace #{} is referenced by the decomposition but has no label", i + 1))
        })?;
        if frame.items().iter().filter(|it| it.label.as_deref() == Some(label.as_str())).count() > 1 {
            return Err(CliError::InvalidSpec(format!("duplicate label `{label}`")));
        }
        Ok(label)
    };
    let decomposition = match &fixture.decomposition {
        None => None,
        Some(d) => {
            let riesz = d.riesz.iter().map(|&i| label_of(i)).collect::<Result<Vec<_>, _>>()?;
            let mut excess = Vec::with_capacity(d.excess.len());
            for spec in &d.excess {
                let components = spec
                    .components
                    .iter()
                    .map(|(r, v)| {
                        let item = *d.riesz.get(*r).ok_or_else(|| {
                            CliError::BadDecomposition(format!("component index {r} outside the Riesz part"))
                        })?;
                        Ok(ComponentEntry { riesz: label_of(item)?, vector: v.clone() })
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                excess.push(ExcessEntry {
                    vector: spec.vector.clone(),
                    host: spec.host.map(label_of).transpose()?,
                    components,
                });
            }
            Some(DecompositionEntry { riesz, excess })
        }
    };
    Ok(FrameFile { dim: frame.ambient_dim(), subspaces, decomposition })
}
