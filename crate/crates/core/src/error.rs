use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// `Hypothesis` means the input does not satisfy the mathematical
/// assumptions of the construction; `Internal` means an identity that the
/// construction guarantees has failed, which points at a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("elements belong to different rings")]
    RingMismatch,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no solution while lifting {context}")]
    NoSolution { context: String },

    #[error("hypothesis `{name}` violated: {detail}")]
    Hypothesis { name: String, detail: String },

    #[error("internal check `{check}` failed: {detail}")]
    Internal { check: String, detail: String },

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    pub fn shape(message: impl Into<String>) -> Self {
        Error::Shape(message.into())
    }

    pub fn no_solution(context: impl Into<String>) -> Self {
        Error::NoSolution { context: context.into() }
    }

    pub fn hypothesis(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Hypothesis { name: name.into(), detail: detail.into() }
    }

    pub fn internal(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Internal { check: check.into(), detail: detail.into() }
    }

    /// Tags an error with the pipeline stage it escaped from.
    pub fn in_stage(self, stage: &'static str) -> Self {
        match self {
            e @ Error::Stage { .. } => e,
            e => Error::Stage { stage, source: Box::new(e) },
        }
    }

    /// True for failures of the mathematics (as opposed to malformed input).
    pub fn is_mathematical(&self) -> bool {
        match self {
            Error::NoSolution { .. } | Error::Hypothesis { .. } | Error::Internal { .. } => true,
            Error::Stage { source, .. } => source.is_mathematical(),
            _ => false,
        }
    }
}
