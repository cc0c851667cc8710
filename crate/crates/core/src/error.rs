use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("multi-index degree {degree} exceeds the space degree m = {m}")]
    DegreeOverflow { degree: u32, m: u32 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("multi-indices are not orthogonal (p.q = {dot})")]
    NotOrthogonal { dot: u64 },

    #[error("invalid symbol class: {0}")]
    InvalidClass(String),

    #[error("symbol coordinates undefined: block {block} of the point vanishes")]
    UndefinedCoordinates { block: usize },

    #[error("torus coordinate {index} has modulus {modulus}, expected 1")]
    NonUnitModulus { index: usize, modulus: f64 },

    #[error("divergent integral: {0}")]
    Divergent(String),

    #[error("numeric quadrature did not converge: relative change {rel_change:e} under node doubling")]
    NotConverged { rel_change: f64 },

    #[error("pi_k is undefined: block {block} of the point vanishes")]
    Indeterminacy { block: usize },

    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
