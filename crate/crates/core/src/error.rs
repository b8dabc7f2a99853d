use thiserror::Error;

/// Errors raised by the numerical layers and the command-line harness.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum FockError {
    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid Fock parameters: {0}")]
    InvalidParams(String),

    #[error("invalid quadrature scheme: {0}")]
    InvalidScheme(String),

    /// The scheme cannot resolve an integrand of the requested degree.
    #[error("quadrature scheme too coarse for degree {degree}: needs {required} {what}, has {available}")]
    InadequateScheme {
        degree: usize,
        what: &'static str,
        required: usize,
        available: usize,
    },

    #[error("value out of floating-point range: {0}")]
    Range(String),

    #[error("lambda must be nonzero")]
    ZeroLambda,

    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),

    #[error("symbol must be a monomial b*z^d, got degree {degree} with {terms} nonzero terms")]
    NonMonomialSymbol { degree: usize, terms: usize },

    /// `degree(g) > A`: the integration operator is not bounded.
    #[error("unbounded operator: degree(g) = {degree} exceeds A = {big_a}")]
    Unbounded { degree: usize, big_a: f64 },

    #[error("operation requires p = 2 (got p = {0})")]
    RequiresHilbert(f64),

    #[error("operation requires an integer growth order A (got A = {0})")]
    RequiresIntegerA(f64),

    #[error("function has zero norm")]
    ZeroNorm,

    #[error("empty function family")]
    EmptyFamily,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, FockError>;
