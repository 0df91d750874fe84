use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),
    #[error("not a closed surface: {0}")]
    NotClosedSurface(String),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("supports intersect: {0}")]
    NotDisjoint(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid normal field: {0}")]
    InvalidField(String),
    #[error("pushoff failed: {0}")]
    PushoffFailed(String),
    #[error("non-simplicial map: {0}")]
    NonSimplicialMap(String),
    #[error("form is not symmetric: {0}")]
    NotSymmetric(String),
    #[error("parity violation (mod-2 constraint on the linking form): {0}")]
    Parity(String),
    #[error("bounds exceeded: {0}")]
    Bounds(String),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("embedding failed: {0}")]
    EmbeddingFailed(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short stable identifier of the violated condition, used in CLI exit messages.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidComplex(_) => "invalid-complex",
            Error::InvalidChain(_) => "invalid-chain",
            Error::NotACycle(_) => "not-a-cycle",
            Error::NotSubcomplex(_) => "not-subcomplex",
            Error::NotClosedSurface(_) => "not-closed-surface",
            Error::Degenerate(_) => "degenerate",
            Error::NotDisjoint(_) => "not-disjoint",
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::InvalidField(_) => "invalid-field",
            Error::PushoffFailed(_) => "pushoff-failed",
            Error::NonSimplicialMap(_) => "non-simplicial-map",
            Error::NotSymmetric(_) => "not-symmetric",
            Error::Parity(_) => "parity-violation",
            Error::Bounds(_) => "bounds-exceeded",
            Error::BasisMismatch(_) => "basis-mismatch",
            Error::EmbeddingFailed(_) => "embedding-failed",
            Error::UnknownName(_) => "unknown-name",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
