use thiserror::Error;

/// Errors raised by field construction, polynomial arithmetic and decoding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degrees must be at least 1 (got s={s}, m={m})")]
    ZeroDegree { s: u32, m: u32 },
    #[error("field of order {0} exceeds the supported size of 2^24 elements")]
    FieldTooLarge(u64),
    #[error("modulus must be monic of degree {expected}, got coefficients {got:?}")]
    ModulusDegree { expected: u32, got: Vec<u32> },
    #[error("modulus coefficient {0} is out of range")]
    ModulusCoefficient(u32),
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("{value} is not an element of a field with {order} elements")]
    InvalidElement { value: u64, order: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("points are linearly dependent over the base field")]
    LinearlyDependent,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation undefined for the zero vector")]
    ZeroVector,
    #[error("degenerate update at step {step}: both discrepancies vanish")]
    DegenerateStep { step: usize },
    #[error("message has q-degree {qdeg} but the code dimension is {k}")]
    MessageTooLong { qdeg: i64, k: usize },
    #[error("invalid code parameters: {0}")]
    InvalidCode(String),
    #[error("rank {t} out of range (at most {max})")]
    RankOutOfRange { t: usize, max: usize },
    #[error("search needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
