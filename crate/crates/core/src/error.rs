use thiserror::Error;

/// Errors reported by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("both arguments are zero")]
    BothZero,
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not unimodular: {0}")]
    NotUnimodular(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("polynomial is not a member of the ideal")]
    NotInIdeal,
    #[error("no valid choice found after {attempts} attempts: {what}")]
    RetryExhausted { attempts: usize, what: String },
    #[error("{formula} needs the parameter {parameter}")]
    MissingParameter { formula: String, parameter: String },
    #[error("parameter {parameter} must be positive")]
    InvalidParameter { parameter: String },
    #[error("p and q share the nonconstant factor {0}")]
    CommonFactor(crate::poly::Polynomial),
    #[error("the ideals differ: {0}")]
    IdealMismatch(String),
    #[error("{0}")]
    InexactDivision(String),
    #[error("{quantity} has degree {degree}, above the {formula} bound {bound}")]
    BoundExceeded {
        formula: String,
        quantity: String,
        degree: u32,
        bound: String,
    },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

/// A parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
