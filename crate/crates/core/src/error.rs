use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter lists differ: {left:?} vs {right:?}")]
    ParamMismatch { left: Vec<String>, right: Vec<String> },

    #[error("undeclared parameter `{0}`")]
    UndeclaredParam(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("even labels are not dominant integral: {0}")]
    NonDominant(String),

    #[error("replication parameter lambda_{index} is zero, which splits the extension")]
    ZeroLambda { index: usize },

    #[error("twist direction nu is zero")]
    ZeroNu,

    #[error("structural failure: {0}")]
    Structural(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
