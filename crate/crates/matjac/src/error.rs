//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set has {0} elements, the bitmask limit is 64")]
    GroundTooLarge(usize),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("matrix entry {0} outside -1..=1")]
    EntryOutOfRange(i64),
    #[error("row {row} has {got} entries, expected {want}")]
    RaggedMatrix { row: usize, want: usize, got: usize },
    #[error("matrix rows are dependent: rank {found} < {rows} rows")]
    RankDeficient { rows: usize, found: usize },
    #[error("endpoint {vertex} out of range for {vertices} vertices")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("loop contraction: column {0:?} is zero")]
    LoopContraction(String),
    #[error("length map misses element {0:?}")]
    MissingLength(String),
    #[error("length {got} for {label:?} must be at least 1")]
    LengthTooSmall { label: String, got: u64 },
    #[error("empty ground set")]
    EmptyGround,
    #[error("point has {got} coordinates, expected {want}")]
    LengthMismatch { want: usize, got: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the counting limit {limit}", limit = crate::MAX_PRIME)]
    PrimeTooLarge(u64),
    #[error("budget refusal: {need} points exceed the limit {limit}")]
    BudgetExceeded { need: u128, limit: u128 },
    #[error("coordinate {0} is not invertible")]
    NotInvertible(String),
    #[error("variable {0:?} has no occurrence with a nonzero cofactor")]
    InvalidPivot(String),
    #[error("matroid is reducible")]
    Reducible,
    #[error("configuration polynomial is constant, nothing to count")]
    ConstantPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("box height {m_max} is below p = {p}")]
    BoxTooSmall { m_max: u64, p: u64 },
    #[error("dimension {dim} must be below the ambient dimension {ambient}")]
    BadDimension { dim: i64, ambient: i64 },
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl Error {
    /// Process exit code contract: 2 for input errors, 3 for budget refusals.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } | Error::PrimeTooLarge(_) => 3,
            _ => 2,
        }
    }
}
