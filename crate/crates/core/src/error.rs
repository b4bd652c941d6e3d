use thiserror::Error;

/// A malformed literal, file or table entry.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct ParseError {
    pub message: String,
    /// 1-based line number when the input was line-oriented.
    pub line: Option<usize>,
}

impl ParseError {
    pub fn new(message: impl Into<String>) -> Self {
        Self { message: message.into(), line: None }
    }

    pub fn at_line(mut self, line: usize) -> Self {
        if self.line.is_none() {
            self.line = Some(line);
            self.message = format!("line {line}: {}", self.message);
        }
        self
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unknown case id `{0}`")]
    UnknownCase(String),

    #[error("parameter out of range for {case}: {reason}")]
    ParameterOutOfRange { case: String, reason: String },

    #[error("missing parameter `{param}` for {case}")]
    MissingParameter { case: String, param: String },

    #[error("Jacobi identity fails for {name}: {detail}")]
    JacobiFailure { name: String, detail: String },

    #[error("J does not square to -Id")]
    NotAlmostComplex,

    #[error("J is not integrable: {0}")]
    NotIntegrable(String),

    #[error("{{U, V, σU, σV}} is not a basis of the complexification")]
    NotDirectSum,

    #[error("form is not closed")]
    NotClosed,

    #[error("compatibility violated: ω(J·,J·) ≠ ω")]
    NotCompatible,

    #[error("map is not a Lie algebra automorphism intertwining J1 and J2: {0}")]
    NotIntertwining(String),

    #[error("{0}")]
    Invalid(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
