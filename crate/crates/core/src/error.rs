use std::fmt;

/// Errors shared across the whole crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The beta-spec string does not match the grammar.
    Parse(String),
    /// The spec denotes a base that is not a real number greater than one.
    BetaOutOfRange(String),
    /// Digit input fails the greedy re-expansion round trip (or an
    /// equivalent domination condition), so it is not the expansion of 1
    /// for any base.
    NotParryAdmissible(String),
    /// Two values from different contexts were combined.
    ContextMismatch,
    /// A numeric argument is outside its stated domain.
    OutOfRange(String),
    /// A letter exceeds the alphabet of the context.
    LetterOutOfRange { letter: u32, alphabet: u32 },
    /// A word fails the admissibility condition of the shift.
    NotAdmissible(String),
    /// The operation needs a sofic (or finite-type) shift.
    NotSofic(String),
    /// The operation needs a shift of finite type.
    NotSft(String),
    /// A table violates the two-row conditions; one entry per violation.
    InvalidTable(Vec<String>),
    /// A point is outside the domain of a piecewise-linear map.
    OutOfDomain(String),
    /// Division by an exact zero.
    DivisionByZero,
    /// An identity the construction guarantees failed to verify.
    InternalInvariantViolation(String),
}

impl Error {
    /// Stable short code used by the structured JSON error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::BetaOutOfRange(_) => "BetaOutOfRange",
            Error::NotParryAdmissible(_) => "NotParryAdmissible",
            Error::ContextMismatch => "ContextMismatch",
            Error::OutOfRange(_) => "OutOfRange",
            Error::LetterOutOfRange { .. } => "LetterOutOfRange",
            Error::NotAdmissible(_) => "NotAdmissible",
            Error::NotSofic(_) => "NotSofic",
            Error::NotSft(_) => "NotSFT",
            Error::InvalidTable(_) => "InvalidTable",
            Error::OutOfDomain(_) => "OutOfDomain",
            Error::DivisionByZero => "DivisionByZero",
            Error::InternalInvariantViolation(_) => "InternalInvariantViolation",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::BetaOutOfRange(msg) => write!(f, "beta out of range: {msg}"),
            Error::NotParryAdmissible(msg) => write!(f, "not a valid expansion of 1: {msg}"),
            Error::ContextMismatch => write!(f, "values belong to different beta contexts"),
            Error::OutOfRange(msg) => write!(f, "argument out of range: {msg}"),
            Error::LetterOutOfRange { letter, alphabet } => {
                write!(f, "letter {letter} outside alphabet 0..{alphabet}")
            }
            Error::NotAdmissible(msg) => write!(f, "word not admissible: {msg}"),
            Error::NotSofic(msg) => write!(f, "shift is not sofic: {msg}"),
            Error::NotSft(msg) => write!(f, "shift is not of finite type: {msg}"),
            Error::InvalidTable(problems) => {
                write!(f, "invalid table: {}", problems.join("; "))
            }
            Error::OutOfDomain(msg) => write!(f, "point outside domain: {msg}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InternalInvariantViolation(msg) => {
                write!(f, "internal invariant violated: {msg}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
