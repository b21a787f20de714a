use thiserror::Error;

/// Every failure signal raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("points are identical; no unique line passes through them")]
    IdenticalPoints,
    #[error("lines are identical")]
    IdenticalLines,
    #[error("lines are parallel")]
    Parallel,
    #[error("line coefficients (a, b) are both zero")]
    DegenerateLine,
    #[error("line {0} occurs more than once")]
    DuplicateLine(String),

    #[error("polynomial is not divisible by the line")]
    NotDivisible,
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("degree {0} exceeds the configured maximum {1}")]
    DegreeTooLarge(usize, usize),

    #[error("node set is not poised")]
    NotPoised,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("node index {0} out of range")]
    NodeIndex(usize),

    #[error("polynomial is not a product of candidate lines (residual degree {residual_degree})")]
    NotProductOfCandidateLines { residual_degree: usize },
    #[error("node set is not GC (node {0} fails to factor)")]
    NotGC(usize),

    #[error("node {0} uses a line with multiplicity greater than one")]
    MultiplicityPresent(usize),
    #[error("line {0} is not used by the node")]
    LineNotUsed(String),
    #[error("counts at positions {0} and {1} differ")]
    CountsUnequal(usize, usize),
    #[error("primary zero data does not match: {0}")]
    PrimaryZeros(String),

    #[error("line {line} passes through {count} nodes, more than degree + 1 = {max}")]
    TooManyCollinear { line: String, count: usize, max: usize },
    #[error("center node is part of the target set")]
    CenterInTarget,
    #[error("curves do not meet in m*n distinct points")]
    DegenerateIntersection,

    #[error("generator gave up after {0} degenerate draws")]
    RetryLimitExceeded(usize),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("duplicate node at index {0}")]
    DuplicateNode(usize),
    #[error("bad rational {0:?}")]
    BadRational(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
