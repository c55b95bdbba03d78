use fusionscale::scaling::{ScalingSolution, TheoremReport};
use fusionscale::{DualCheck, ExcessInfo, FrameAnalysis, ToleranceConfig};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// What a command prints on standard output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Arguments the command was invoked with, program name excluded.
    pub command: Vec<String>,
    /// Hex SHA-256 of the input file bytes, concatenated in argument order.
    pub input_digest: String,
    pub tolerances: ToleranceConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<FrameAnalysis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub excess: Option<ExcessPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaling: Option<ScalingSolution>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<TheoremReport>,
    pub wall_time_seconds: f64,
}

impl Report {
    pub fn new(command: Vec<String>, inputs: &[&[u8]], tolerances: ToleranceConfig) -> Self {
        let mut hasher = Sha256::new();
        for bytes in inputs {
            hasher.update(bytes);
        }
        Self {
            command,
            input_digest: hex::encode(hasher.finalize()),
            tolerances,
            analysis: None,
            excess: None,
            scaling: None,
            dual: None,
            theorem: None,
            wall_time_seconds: 0.0,
        }
    }
}

/// Excess of the frame with an orthonormal basis of the synthesis kernel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExcessPayload {
    pub excess: usize,
    /// Kernel basis vectors, each of length `sum dim W_i`.
    pub kernel_basis: Vec<Vec<f64>>,
}

impl From<&ExcessInfo> for ExcessPayload {
    fn from(info: &ExcessInfo) -> Self {
        Self { excess: info.excess, kernel_basis: info.kernel.columns() }
    }
}
