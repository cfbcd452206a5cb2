use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KappaError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("unsupported dimension {0} (expected 1..=6)")]
    BadDimension(usize),
    #[error("unsupported truncation order {0}")]
    BadOrder(usize),
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("square root needs constant term 1, found {0}")]
    SqrtBranch(String),
    #[error("integrand depends on A")]
    DependsOnA,
    #[error("slot {0} out of range")]
    SlotOutOfRange(usize),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("invalid realization: {0}")]
    InvalidRealization(String),
    #[error("inconsistent defining equations: {0}")]
    Inconsistent(String),
    #[error("residual x-dependence in {0}")]
    ResidualXDependence(String),
    #[error("matrix is singular at a = 0")]
    SingularJacobian,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, KappaError>;
