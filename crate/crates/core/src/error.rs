use thiserror::Error;

/// Errors raised by the algebra, polynomial, operator and solver layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("blade references generator {index} but the algebra has only {n} generators")]
    InvalidBlade { index: usize, n: usize },
    #[error("operands belong to different algebra signatures")]
    SignatureMismatch,
    #[error("axis {axis} out of range for {vars} variables")]
    AxisOutOfRange { axis: usize, vars: usize },
    #[error("point has {actual} coordinates, expected {expected}")]
    PointDimension { expected: usize, actual: usize },
    #[error("coefficient {0} is not real-valued")]
    NotRealValued(String),
    #[error("expected {expected} coefficients, got {actual}")]
    CoefficientCount { expected: usize, actual: usize },
    #[error("wrong case: {0}")]
    WrongCase(String),
    #[error("degenerate operator: {0}")]
    DegenerateOperator(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
