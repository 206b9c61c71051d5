use thiserror::Error;

/// Errors raised by the library. Each variant has a stable machine code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeBlowup { degree: u32, cap: u32 },
    #[error("ideal does not have finite codimension")]
    NotFiniteCodimension,
    #[error("ideal is not supported at the origin")]
    NotSupportedAtOrigin,
    #[error("characteristic polynomial does not split over the rationals")]
    IrrationalSplitting,
    #[error("algebra is not local")]
    NotLocal,
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("operators do not commute")]
    NotCommuting,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("equation is not quadratic")]
    NotQuadratic,
    #[error("fan is not complete")]
    NotComplete,
    #[error("malformed fan: {0}")]
    MalformedFan(String),
    #[error("fan does not have rank 2")]
    NotSurface,
    #[error("no additive action")]
    NoAdditiveAction,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("unknown fixture: {0}")]
    UnknownFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable upper-case code used by the command-line tool.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegreeBlowup { .. } => "DEGREE_BLOWUP",
            Error::NotFiniteCodimension => "NOT_FINITE_CODIMENSION",
            Error::NotSupportedAtOrigin => "NOT_SUPPORTED_AT_ORIGIN",
            Error::IrrationalSplitting => "IRRATIONAL_SPLITTING",
            Error::NotLocal => "NOT_LOCAL",
            Error::NotNilpotent => "NOT_NILPOTENT",
            Error::NotCommuting => "NOT_COMMUTING",
            Error::DegenerateInput(_) => "DEGENERATE_INPUT",
            Error::InvalidPair(_) => "INVALID_PAIR",
            Error::NotQuadratic => "NOT_QUADRATIC",
            Error::NotComplete => "NOT_COMPLETE",
            Error::MalformedFan(_) => "MALFORMED_FAN",
            Error::NotSurface => "NOT_SURFACE",
            Error::NoAdditiveAction => "NO_ADDITIVE_ACTION",
            Error::NotApplicable(_) => "NOT_APPLICABLE",
            Error::InvalidWeights(_) => "INVALID_WEIGHTS",
            Error::NotFullDimensional => "NOT_FULL_DIMENSIONAL",
            Error::InvalidPolytope(_) => "INVALID_POLYTOPE",
            Error::UnknownFixture(_) => "UNKNOWN_FIXTURE",
            Error::Parse(_) => "PARSE_ERROR",
            Error::InvalidInput(_) => "INVALID_INPUT",
            Error::Internal(_) => "INTERNAL",
        }
    }

    /// True for errors caused by unreadable or ill-formed input rather than
    /// by a mathematical precondition.
    pub fn is_malformed_input(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::InvalidInput(_) | Error::MalformedFan(_) | Error::UnknownFixture(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
