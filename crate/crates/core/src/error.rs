use thiserror::Error;

/// Errors raised by the optimizer, its models and the benchmark harness.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension {0} is too small (need n >= 2)")]
    DimensionTooSmall(usize),

    #[error("vector is not unit length (norm {0})")]
    NotUnit(f64),

    #[error("random source failed to produce a direction off the given axis")]
    DegenerateDirection,

    #[error("point lies off the frame plane (residual {residual:e})")]
    OffPlane { residual: f64 },

    #[error("zero step: next iterate equals the frame origin")]
    ZeroStep,

    #[error("interpolation abscissae are not distinct")]
    DuplicateAbscissae,

    #[error("interpolation system is singular or ill-conditioned (condition estimate {0:e})")]
    Singular(f64),

    #[error("no poised six-point subset among {0} candidates")]
    NoPoisedSubset(usize),

    #[error("non-finite objective value at the starting point")]
    NonFiniteStart,

    #[error("evaluation budget of {0} exhausted")]
    BudgetExhausted(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("problem `{name}` does not support dimension {n}: {rule}")]
    InvalidDimension {
        name: String,
        n: usize,
        rule: &'static str,
    },

    #[error("degenerate record: initial value equals best known value")]
    DegenerateRecord,

    #[error("{0}")]
    Harness(String),
}

pub type Result<T> = std::result::Result<T, Error>;
