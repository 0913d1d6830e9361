use thiserror::Error;

/// Errors raised by family construction, parsing and the exact solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {element} is outside the ground set [1, {n}]")]
    ElementOutOfRange { element: u32, n: usize },

    #[error("ground set size {n} exceeds the dense-mode limit of {limit}")]
    DenseLimit { n: usize, limit: usize },

    #[error("ground set size must be at least 1")]
    EmptyGround,

    #[error("families live on different ground sets ({0} vs {1})")]
    GroundMismatch(usize, usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("compression needs 1 <= i < j <= n, got i={i}, j={j}")]
    BadCompression { i: u32, j: u32 },

    #[error("weight x_{index} is negative")]
    NegativeWeight { index: usize },

    #[error("weight vector has {got} entries, ground set has {n}")]
    WeightLength { got: usize, n: usize },

    #[error("n = {n} exceeds the search guard {guard}; raise the guard explicitly to proceed")]
    GuardExceeded { n: usize, guard: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
