use thiserror::Error;

/// Errors raised by the library. Variants carry enough context to be
/// reported verbatim by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("map components have unequal degrees {0:?}")]
    UnequalComponentDegrees(Vec<u32>),
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("variable does not occur with positive degree: {0}")]
    NoPositiveDegree(&'static str),
    #[error("coincident points")]
    CoincidentPoints,
    #[error("degenerate map: {0}")]
    DegenerateMap(String),
    #[error("map is indeterminate at {0}")]
    IndeterminateAt(String),
    #[error("map is the identity")]
    IdentityMap,
    #[error("degenerate composition: {0}")]
    DegenerateComposition(String),
    #[error("curve declaration rejected: {0}")]
    InvalidCurve(String),
    #[error("inconsistent declaration: {0}")]
    Inconsistent(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("general position violated: {0}")]
    NotGeneralPosition(String),
    #[error("calibration failed: {0}")]
    Calibration(String),
    #[error("degenerate element: {0}")]
    DegenerateElement(String),
    #[error("polynomial has multiple roots")]
    MultipleRoots,
    #[error("too few entries: need {need}, got {got}")]
    TooFewEntries { need: usize, got: usize },
    #[error("positive-dimensional common zero locus")]
    PositiveDimensional,
    #[error("line contained in the curve")]
    LineInCurve,
    #[error("zero gradient at {0}")]
    ZeroGradient(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
