use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is not supported (need p > 3)")]
    Characteristic(u64),
    #[error("prime {0} does not fit the 31-bit residue representation")]
    TooLarge(u64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("degenerate form: rank {rank} < dim {dim}")]
    DegenerateForm { rank: usize, dim: usize },
    #[error("form of odd dimension {0} has no hyperbolic basis")]
    OddDimension(usize),
    #[error("form is not split over the base field ({found} hyperbolic pairs found)")]
    NotSplit { found: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { max: usize, got: usize },
    #[error("a ring needs at least one variable")]
    NoVariables,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("zero coordinate vector")]
    ZeroVector,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("substitution shape mismatch: expected {expected}, got {got}")]
    SubstitutionShape { expected: usize, got: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("the ideal is the whole ring")]
    ZeroIdeal,
    #[error("lead term {0} could not be reduced: generating set is not a Groebner basis")]
    NotGroebner(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("minimalization did not terminate within {0} steps")]
    LengthExceeded(usize),
    #[error("resolution is not minimal: constant entry in differential {step}")]
    NotMinimal { step: usize },
    #[error("betti table parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VarietyError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("pfaffian of an odd index set of size {0}")]
    OddSubset(usize),
    #[error("pfaffians of size {size} do not fit a {n}x{n} matrix")]
    TooLarge { size: usize, n: usize },
    #[error("random linear section stayed rank deficient after {0} attempts")]
    RankDeficient(usize),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PointsetError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("expected {expected} points, got {got}")]
    BadCardinality { expected: usize, got: usize },
    #[error("configuration is degenerate: {0}")]
    Degenerate(String),
    #[error("duplicate parameter value {0}")]
    DuplicateParam(u32),
    #[error("the first n+2 points are not in linearly general position")]
    DegenerateFrame,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("found {} rational points but the scheme has degree {degree}", found.len())]
    Incomplete {
        found: Vec<Vec<crate::linalg::Scalar>>,
        degree: usize,
    },
    #[error("unlabeled equivalence search gave up")]
    Indeterminate,
    #[error("could not produce a configuration in general position after {0} attempts")]
    RetriesExhausted(usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MukaiError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Points(#[from] PointsetError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error("configuration is not self-associated")]
    NotSelfAssociated,
    #[error("unexpected dimension at stage {stage}: expected {expected}, got {got}")]
    UnexpectedDimension {
        stage: String,
        expected: usize,
        got: usize,
    },
    #[error("quadratic relation is degenerate (rank {0})")]
    DegenerateRelation(usize),
    #[error("no transverse chart found after {0} attempts")]
    ChartExhausted(usize),
    #[error("expected a one-dimensional kernel, found dimension {0}")]
    UnexpectedKernel(usize),
    #[error("map is not general: section space has dimension {0}")]
    DegenerateMap(usize),
    #[error("unsupported n = {0}")]
    UnsupportedN(usize),
    #[error("check failed at {stage}: {detail}")]
    Assertion { stage: String, detail: String },
}
