use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// The requested order is not of the form `m = 4q - 1` with `m >= 3`.
    #[error("Error: m={m} is incorrect size for Hadamard matrices")]
    InvalidOrder { m: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A matrix was built from ragged rows or entries outside its alphabet.
    #[error("malformed matrix: {0}")]
    Malformed(String),

    #[error("matrix is not a Hadamard matrix")]
    NotHadamard,

    #[error("matrix is not normalized: first row and column must be all +1")]
    NotNormalized,

    /// Ones do not precede zeros inside some refinement span, so the row
    /// cannot be written as a group list without losing column positions.
    #[error("row {row} is not in canonical ones-first layout")]
    NonCanonicalRow { row: usize },

    #[error("invalid group list: {0}")]
    InvalidGroupList(String),

    /// Group labels need `depth` bits; labels are stored in 64 bits.
    #[error("order {m} exceeds the largest supported group-list depth ({max})")]
    DepthOverflow { m: usize, max: usize },

    #[error("brute-force oracle refused order {m}: cost cap is {cap}")]
    OrderTooLarge { m: usize, cap: usize },

    /// A produced matrix failed verification. Always a bug.
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    /// Failure reported by a matrix sink (usually I/O).
    #[error("sink failed: {0}")]
    Sink(#[source] Box<dyn std::error::Error + Send + Sync>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
