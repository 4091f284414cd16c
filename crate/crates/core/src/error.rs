use thiserror::Error;

/// Errors raised by the engine.
///
/// Most variants signal an internal inconsistency (a normalization bug, a
/// malformed Cartan datum); only the input-validation variants are expected
/// in normal use.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan datum: {0}")]
    InvalidCartan(String),
    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("root generation exceeded height {0}; Cartan matrix is not of finite type")]
    NotFiniteType(i64),
    #[error("weight {0:?} is not dominant integral")]
    NotDominant(Vec<String>),
    #[error("polynomial error: {0}")]
    Poly(#[from] PolyError),
    #[error("special-root search found {found} tuples but |W| = {expected}")]
    TupleCount { found: usize, expected: u64 },
    #[error("signature assignment failed: {0}")]
    Signature(String),
    #[error("non-integral exponent for tuple {tuple}: {value}")]
    NonIntegralExponent { tuple: usize, value: String },
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error("Weyl group order exceeds the limit of {0}")]
    GroupTooLarge(usize),
    #[error("tensor decomposition: {0}")]
    Tensor(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Errors from Laurent polynomial arithmetic.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVars { max: usize, got: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact; offending remainder term {term}")]
    NotExact { term: String },
    #[error("malformed polynomial: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
