use thiserror::Error;

/// Every failure the engine can report. Mathematical inconsistencies are not
/// errors; they surface as `VIOLATION` verdicts in theorem reports.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: expected {expected}")]
    Syntax { pos: usize, expected: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("malformed job document: {0}")]
    MalformedDocument(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("newton closure unsupported: {0}")]
    ClosureUnsupported(String),
    #[error("arity mismatch: {0} vs {1} variables")]
    ArityMismatch(usize, usize),
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("colon by a zero generator")]
    ZeroDivisorGenerator,
    #[error("ideal is not generated by monomials")]
    NotMonomial,
    #[error("presented ring has dimension 0")]
    ZeroDimensionalRing,
    #[error("subquotient denominator is not contained in the numerator")]
    NotNested,
    #[error("length did not stabilize below the saturation cap")]
    NoStabilization,
    #[error("filtration seed is not m-primary")]
    NotMPrimary,
    #[error("filtration is not admissible: I^n \u{2284} I_n at n = {0}")]
    NotAdmissibleUpTo(i64),
    #[error("graded regularity fails at n = {n}: witness {witness}")]
    RegularityFails { n: i64, witness: String },
    #[error("no reduction found after {0} attempts")]
    NoReductionFound(usize),
    #[error("operation needs dimension {expected}, ring has dimension {actual}")]
    WrongDimension { expected: usize, actual: usize },
    #[error("supplied ideal is not a verified reduction")]
    NotAReduction,
    #[error("hypothesis not verified: {0}")]
    HypothesisUnverified(String),
    #[error("generators do not form a regular sequence")]
    NotRegularSequence,
    #[error("argument outside the tabulated range")]
    RangeExceeded,
    #[error("division is not exact")]
    InexactDivision,
    #[error("infinite length where a finite length was required")]
    InfiniteLength,
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
