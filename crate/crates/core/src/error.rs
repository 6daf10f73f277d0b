use thiserror::Error;

/// Errors raised by the symbolic engine and the geometric constructions built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("expression outside the supported class: {0}")]
    Unsupported(String),
    #[error("division by the zero expression")]
    DivisionByZero,
    #[error("evaluation failed: {0}")]
    Evaluation(String),
    #[error("chart mismatch: expected `{expected}`, found `{found}`")]
    ChartMismatch { expected: String, found: String },
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("degree {degree} out of range for this operation on a chart of dimension {dim}")]
    Degree { degree: usize, dim: usize },
    #[error("component {component} depends on the dropped coordinate `{coord}`")]
    Projectability { component: String, coord: String },
    #[error("field is not the coordinate field of a chart coordinate: {0}")]
    NotStraightened(String),
    #[error("singular linear system: {0}")]
    Singular(String),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("chart dimension {0} is even; a twisted contact structure needs odd dimension")]
    EvenDimension(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("paths are not composable: endpoint gap {0:e}")]
    NotComposable(f64),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
