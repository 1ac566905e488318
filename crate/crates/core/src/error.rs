use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid embedding moduli: {0}")]
    InvalidEmbedding(String),

    #[error("invalid kernel weights: {0}")]
    InvalidWeights(String),

    #[error("point with modulus {modulus} lies outside the admissible disc")]
    OutsideDisc { modulus: f64 },

    #[error("boundary evaluation requires a compact-regime kernel or embedding")]
    BoundaryNotAllowed,

    #[error("operation requires the compact regime (sum of moduli < 1)")]
    NonCompactRegime,

    #[error("derivative series diverges at the boundary point")]
    DerivativeDiverges,

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("matrix is not Hermitian (relative asymmetry {asymmetry:e})")]
    NonHermitian { asymmetry: f64 },

    #[error("nodes {first} and {second} coincide")]
    CoincidentNodes { first: usize, second: usize },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("point list exhausted after {found} of {wanted} indices: {reason}")]
    Exhausted {
        found: usize,
        wanted: usize,
        reason: String,
    },

    #[error("evaluation point {0} is within guard distance of a pole or branch cut")]
    Singular(String),

    #[error("unknown tag `{0}`")]
    UnknownTag(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
