use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Ill-formed input: dimension mismatches, parameter constraint violations,
    /// malformed instances. Maps to CLI exit code 2.
    #[error("validation: {0}")]
    Validation(String),

    /// An exhaustive search exceeded its node budget. Maps to CLI exit code 3.
    #[error("budget exceeded: explored {explored} nodes of budget {budget} in {what}")]
    Budget {
        what: String,
        explored: u64,
        budget: u64,
    },

    /// A strict-scale construction whose honest parameters cannot be
    /// materialized at desk scale. Carries the symbolic size so callers can
    /// report it. Maps to CLI exit code 4.
    #[error("infeasible at strict scale: {what} requires size {size}")]
    InfeasibleStrictScale { what: String, size: BigInt },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    /// Process exit code for the CLI: 2 validation, 3 budget, 4 strict-scale.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Io(_) | Error::Json(_) => 2,
            Error::Budget { .. } => 3,
            Error::InfeasibleStrictScale { .. } => 4,
        }
    }
}
