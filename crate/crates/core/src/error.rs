use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("field mismatch: cannot mix real and complex operands")]
    FieldMismatch,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("non-finite entry at index {0}")]
    NonFinite(usize),

    #[error("real field entry at index {0} has a nonzero imaginary part")]
    ImaginaryInReal(usize),

    #[error("zero vector has no angle")]
    ZeroVector,

    #[error("matrix is not Hermitian: entry ({0}, {1}) differs from its mirror")]
    NotHermitian(usize, usize),

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eig:e})")]
    NotPsd { min_eig: f64 },

    #[error("diagonal entry {index} is {value}, expected {expected}")]
    BadDiagonal { index: usize, value: f64, expected: &'static str },

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("duplicate index {0}")]
    DuplicateIndex(usize),

    #[error("value {value} outside the allowed range for {what}")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("angles do not form a triangle triplet")]
    NotTriangle,

    #[error("density factor has trace(H*H) = {0}, expected 1")]
    TraceNotOne(f64),

    #[error("partial isometry deviates from H*H = I by {0:e}")]
    NotIsometry(f64),

    #[error("iteration did not converge: {0}")]
    NoConvergence(&'static str),

    #[error("function precondition failed: {0}")]
    Precondition(String),

    #[error("unbounded domain needs an explicit grid window")]
    UnboundedDomain,
}
