use thiserror::Error;

/// Errors produced by model construction, evaluation, contraction and I/O.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("model has no worlds")]
    EmptyModel,
    #[error("duplicate world id `{0}`")]
    DuplicateWorld(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("unknown modality index `{0}`")]
    UnknownModality(String),
    #[error("no designated world")]
    MissingDesignated,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no maximal representative of `{world}` at level {level}")]
    NoRepresentative { world: String, level: usize },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no candidate model found: {0}")]
    NoCandidate(String),
    #[error("malformed document at {location}: {message}")]
    Malformed { location: String, message: String },
    #[error("unknown world `{world}` referenced at {location}")]
    UnknownReference { location: String, world: String },
    #[error("formula syntax error at offset {offset}: {message}")]
    FormulaSyntax { offset: usize, message: String },
    #[error("unknown figure `{0}`")]
    UnknownFigure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
