use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("grid mismatch: {a} vs {b}")]
    GridMismatch { a: String, b: String },

    #[error(transparent)]
    Model(#[from] nhqubit::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 2 config, 3 broken phase, 4 quadrature divergence, 5 I/O.
    pub fn exit_code(&self) -> i32 {
        use nhqubit::Error as E;
        match self {
            CliError::Config(_) | CliError::GridMismatch { .. } => 2,
            CliError::Model(E::BrokenPhase(_) | E::ExceptionalPoint | E::DegenerateNonDiagonalizable { .. }) => 3,
            CliError::Model(E::QuadratureDivergence { .. }) => 4,
            CliError::Model(_) => 2,
            CliError::Io { .. } => 5,
        }
    }
}
