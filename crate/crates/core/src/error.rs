use thiserror::Error;

/// Errors produced by the distribution, fitting and reporting layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("quadrature failed to converge (error estimate {abs_error:.3e} after {evaluations} evaluations)")]
    QuadratureNonConvergence { abs_error: f64, evaluations: usize },

    #[error("root not found: {0}")]
    RootNotFound(String),

    #[error("function evaluation failed: {0}")]
    Evaluation(String),

    #[error("parameter regime not supported: {0}")]
    Regime(String),

    #[error("moment of order {order} does not exist for these parameters")]
    MomentNonexistent { order: f64 },

    #[error("infeasible parameters for the data: {0}")]
    Infeasible(String),

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("observed information is not positive definite: {0}")]
    SingularInformation(String),

    #[error("restricted model has higher likelihood than the full model ({restricted} < {full})")]
    NestingViolation { restricted: f64, full: f64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("unknown model identifier `{0}`")]
    UnknownModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
