use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INVALID_CONFIG: i32 = 2;
    pub const CONVERGENCE: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Model(#[from] rabi_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cache: {0}")]
    Cache(String),

    #[error("serializing report: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use rabi_core::Error as E;
        match self {
            CliError::Config(_) => exit::INVALID_CONFIG,
            // Errors traceable to a parameter the user chose.
            CliError::Model(
                E::InvalidParams(_)
                | E::InvalidTolerance(_)
                | E::InvalidExponent(_)
                | E::InvalidRangeCap(_)
                | E::MalformedInterval { .. }
                | E::Empty(_),
            ) => exit::INVALID_CONFIG,
            CliError::Model(_) => exit::CONVERGENCE,
            CliError::Io { .. } | CliError::Cache(_) | CliError::Serialize(_) => exit::IO,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rabi_core::ParityClass;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Config("x".into()).exit_code(), 2);
        assert_eq!(
            CliError::from(rabi_core::Error::InvalidExponent(0.3)).exit_code(),
            2
        );
        let stuck = rabi_core::Error::NoConvergence {
            parity: ParityClass::Plus,
            tol: 1e-8,
            max_dim: 100,
            movement: 1e-3,
        };
        assert_eq!(CliError::from(stuck).exit_code(), 3);
        let io = CliError::io("/x", std::io::Error::other("boom"));
        assert_eq!(io.exit_code(), 4);
        assert_eq!(CliError::Cache("bad".into()).exit_code(), 4);
    }
}
