use thiserror::Error;

/// Exit codes: 0 success, 1 property violation, 2 parse error,
/// 3 dimension/count mismatch, 4 numeric precondition failure.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("numeric precondition failed: {0}")]
    Numeric(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => 2,
            CliError::Mismatch(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }
}

impl From<lipgeo::Error> for CliError {
    fn from(err: lipgeo::Error) -> Self {
        use lipgeo::Error as E;
        match err {
            E::DimensionMismatch { .. } | E::CurveLengthMismatch { .. } => {
                CliError::Mismatch(err.to_string())
            }
            E::SpeedBelowFloor { .. } => CliError::Numeric(err.to_string()),
            other => CliError::Parse(other.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
