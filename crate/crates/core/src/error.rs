use std::fmt;

/// Location-carrying diagnostic produced by the program parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownGate,
    MalformedNumber,
    RegisterOverflow,
}

impl ParseError {
    pub fn new(line: usize, column: usize, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        Self { line, column, kind, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UnknownGate => "unknown gate",
            ParseErrorKind::MalformedNumber => "malformed number",
            ParseErrorKind::RegisterOverflow => "register overflow",
        };
        write!(f, "{}:{}: {}: {}", self.line, self.column, kind, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("matrix is singular (no pivot at elimination step {step})")]
    Singular { step: usize },
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("invalid program: {0}")]
    Semantic(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
