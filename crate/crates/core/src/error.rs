use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("modulus is not irreducible over F_{p}")]
    Reducible { p: u32 },
    #[error("no default modulus for p = {p}, degree {degree}; supply one explicitly or via RMLAB_MODULI")]
    NoDefaultModulus { p: u32, degree: usize },
    #[error("degree {sub} does not divide {n}")]
    BadSubfield { sub: usize, n: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("element {0} is outside the field")]
    NotInField(u32),
    #[error("generators span the zero space")]
    EmptySpan,
    #[error("the code has dimension 0")]
    EmptyCode,
    #[error("enumeration needs {needed} rank evaluations but the budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("parameter condition violated: {0}")]
    Condition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
