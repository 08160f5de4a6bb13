use thiserror::Error;

use crate::SpaceKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: String, reason: String },

    #[error("non-finite value {value} at node {index} ({node})")]
    NonFinite {
        index: usize,
        node: String,
        value: String,
    },

    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive definite (pivot {0} failed)")]
    NotPositiveDefinite(usize),

    #[error("{0:?} does not support {1}")]
    Unsupported(SpaceKind, &'static str),

    #[error("symbol is not differentiable ({0}); use the distributional path")]
    NonDifferentiable(String),

    #[error("point {point} is not in the interior of {kind:?}")]
    OutsideDomain { kind: SpaceKind, point: String },

    #[error("domain mismatch: {0:?} vs {1:?}")]
    DomainMismatch(SpaceKind, SpaceKind),

    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },

    #[error("cannot parse symbol `{spec}`: {reason}")]
    SymbolParse { spec: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub fn invalid(name: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::InvalidArgument {
        name: name.into(),
        reason: reason.into(),
    }
}
