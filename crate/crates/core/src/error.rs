use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),
    #[error("characteristic {0} is not a prime below 65536")]
    NotPrime(u64),
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("monomial length mismatch ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("invalid variable name `{name}`: {reason}")]
    InvalidVariable { name: String, reason: &'static str },
    /// `column` is a 1-based character offset into the parsed text.
    #[error("column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("colon by the zero polynomial")]
    ZeroColon,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("`{0}` is not homogeneous of positive degree")]
    NotHomogeneous(String),
    #[error("not a system of parameters: {0}")]
    InvalidSystemOfParameters(String),
    #[error("closure chain did not stabilize within e_max = {0}")]
    NotStabilized(u32),
    #[error("intermediate degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: u64, cap: u64 },
}
