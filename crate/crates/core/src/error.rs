use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// [`Error::class`] gives the stable, greppable name the command-line front
/// end prints as the first token of its diagnostic line.
#[derive(Debug, Error)]
pub enum Error {
    #[error("step size must be finite and positive, got {0}")]
    NonPositiveStep(f64),

    #[error("series needs at least {min} samples, got {len}")]
    TooShort { len: usize, min: usize },

    #[error("series contains a non-finite value at index {0}")]
    NonFiniteSample(usize),

    #[error("memory length {length} is shorter than one step ({step})")]
    MemoryTooShort { length: f64, step: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("recursion denominator vanishes for step {step} (value {value:e})")]
    DegenerateDenominator { step: f64, value: f64 },

    #[error("a0 is zero, the step response has no finite steady state")]
    ZeroA0,

    #[error("series lengths or steps differ: {0}")]
    LengthMismatch(String),

    #[error("normal-equation matrix is singular (pivot ratio {ratio:e}); the data may not be exciting enough or the orders coincide")]
    SingularNormalMatrix { ratio: f64 },

    #[error("no candidate order pair could be fitted")]
    NoFeasibleCandidate,

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}:{line}: cannot parse {token:?}: {reason}")]
    Parse {
        path: PathBuf,
        line: usize,
        token: String,
        reason: String,
    },

    #[error("{path}: time grid is not uniform, worst relative deviation {deviation:e} at line {line}")]
    NonUniformGrid {
        path: PathBuf,
        line: usize,
        deviation: f64,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn class(&self) -> &'static str {
        match self {
            Error::NonPositiveStep(_) => "NonPositiveStep",
            Error::TooShort { .. } => "TooShort",
            Error::NonFiniteSample(_) => "NonFiniteSample",
            Error::MemoryTooShort { .. } => "MemoryTooShort",
            Error::InvalidModel(_) => "InvalidModel",
            Error::DegenerateDenominator { .. } => "DegenerateDenominator",
            Error::ZeroA0 => "ZeroA0",
            Error::LengthMismatch(_) => "LengthMismatch",
            Error::SingularNormalMatrix { .. } => "SingularNormalMatrix",
            Error::NoFeasibleCandidate => "NoFeasibleCandidate",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::Parse { .. } => "ParseError",
            Error::NonUniformGrid { .. } => "NonUniformGrid",
            Error::Io { .. } => "IoError",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
