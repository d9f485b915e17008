use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator '{name}' at {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("ball size cap {cap} exceeded at radius {radius} ({reached} vertices)")]
    BallCap { cap: usize, radius: usize, reached: usize },
    #[error("vertex outside the ball: {0}")]
    OutsideBall(String),
    #[error("not unique: {0}")]
    NotUnique(String),
    #[error("shortfall: {0}")]
    Shortfall(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("stage {stage}: {source}")]
    Stage { stage: usize, source: Box<Error> },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
