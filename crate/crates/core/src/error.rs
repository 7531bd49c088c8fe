use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} and {1}")]
    ConductorMismatch(u32, u32),
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("coefficient vector of length {len} is longer than conductor {conductor}")]
    CoefficientsTooLong { len: usize, conductor: u32 },
    #[error("polynomials live in different rings ({0} vs {1} variables)")]
    NvarsMismatch(usize, usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix has shape {rows}x{cols}, expected {expected}x{expected}")]
    BadShape { rows: usize, cols: usize, expected: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("generator {0} is singular")]
    SingularGenerator(usize),
    #[error("group closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("the Molien series is not of the form 1/prod(1 - t^d)")]
    NotPolynomialInvariantRing,
    #[error("degree bound {given} is below the top coinvariant degree {needed}")]
    DegreeBoundTooSmall { given: usize, needed: usize },
    #[error("coinvariant histogram {found:?} does not match expected {expected:?}")]
    HistogramMismatch { found: Vec<usize>, expected: Vec<usize> },
    #[error("the pseudo-reflections do not generate the group (use --force to continue)")]
    NotReflectionGenerated,
    #[error("map is not a member: {0}")]
    NotMember(String),
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}
