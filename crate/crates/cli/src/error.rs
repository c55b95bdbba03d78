use std::path::PathBuf;

/// Everything that makes a command exit with status 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("subspace {subspace}: {rows} basis rows span only {rank} dimensions")]
    RankDeficientBasis { subspace: String, rows: usize, rank: usize },
    #[error("subspace {subspace}: weight {weight} is not strictly positive")]
    NonpositiveWeight { subspace: String, weight: f64 },
    #[error("bad decomposition: {0}")]
    BadDecomposition(String),
    #[error("unknown theorem id `{0}`")]
    UnknownTheoremId(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("invalid input: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Core(#[from] fusionscale::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}
