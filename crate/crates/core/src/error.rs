use std::path::PathBuf;

use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cyclotomic conductors {left} and {right} differ and strict embedding was requested")]
    ConductorMismatch { left: u32, right: u32 },

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("prime {p} ramifies (divides the discriminant {disc})")]
    RamifiedPrime { p: u64, disc: String },

    #[error("{label} has bad reduction at p = {p}")]
    BadReduction { label: String, p: u64 },

    #[error("prime {p} is not supported here: {reason}")]
    UnsupportedPrime { p: u64, reason: &'static str },

    #[error("enumeration over a field of size {size} exceeds the limit {limit}")]
    EnumerationTooLarge { size: u64, limit: u64 },

    #[error("class functions live on different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },

    #[error("character table {group} is singular")]
    SingularTable { group: String },

    #[error("malformed character table {group}: {detail}")]
    MalformedTable { group: String, detail: String },

    #[error("decomposition is not a true character: {detail}")]
    NotACharacter { detail: String },

    #[error("no projection from {from} to {to} is registered")]
    UnknownProjection { from: String, to: String },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("data corruption: {0}")]
    DataCorruption(String),

    #[error("no admissible quartic with coefficients bounded by {bound}")]
    NotFound { bound: i64 },

    #[error("inconsistent input data: {0}")]
    Inconsistent(String),

    #[error("combinatorial guard exceeded: dimension {dim} > {limit}")]
    GuardExceeded { dim: usize, limit: usize },

    #[error("only {usable} usable primes below {bound}, need at least {needed}")]
    InsufficientSample { usable: usize, bound: u64, needed: usize },

    #[error("{path}: {detail}")]
    Schema { path: PathBuf, detail: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
