use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("unsupported representation: {0}")]
    UnsupportedRepresentation(String),
    #[error("trace calibration failed: {0}")]
    Calibration(String),
    #[error("accuracy target missed: {msg} (achieved {achieved:e})")]
    Accuracy { msg: String, achieved: f64 },
    #[error("argument outside the admissible sector: {0}")]
    Sector(String),
    #[error("assumption violated: {0}")]
    Assumption(String),
    #[error("Picard iteration diverged (ratio history {ratios:?})")]
    Divergence { ratios: Vec<f64> },
    #[error("empty existence window: {0}")]
    EmptyWindow(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status for the command line.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Domain(_)
            | Error::Shape(_)
            | Error::UnsupportedRepresentation(_)
            | Error::Sector(_)
            | Error::Assumption(_)
            | Error::EmptyWindow(_)
            | Error::Hypothesis(_) => 3,
            Error::Numeric(_) | Error::Calibration(_) | Error::Accuracy { .. } => 4,
            Error::Divergence { .. } => 5,
            Error::Io(_) => 74,
        }
    }
}
