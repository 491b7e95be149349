use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("jet-depth: derivative order {order} exceeds maximum {max} for {func}")]
    JetDepth { func: String, order: u32, max: u32 },

    #[error("operand is not a polynomial expression: {0}")]
    NotPolynomial(String),

    #[error("no closed-form antiderivative found: {0}")]
    NotIntegrable(String),

    #[error("internal consistency: {0}")]
    Inconsistent(String),

    #[error("unknown key: {0}")]
    UnknownKey(String),

    #[error("parameter constraint violated: {0}")]
    Constraint(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
