use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a supported prime (need 2 <= p <= 97)")]
    InvalidPrime(u64),
    #[error("{q} is not a positive power of {p}")]
    NotPrimePower { q: u64, p: u32 },
    #[error("invalid variable set: {0}")]
    InvalidVariables(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent overflow (limit {})", u16::MAX)]
    ExponentOverflow,
    #[error("coefficient overflow")]
    CoefficientOverflow,
    #[error("polynomial is not weighted-homogeneous: `{first}` and `{second}` have different degrees")]
    NonHomogeneous { first: String, second: String },
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("operands live in different polynomial rings")]
    RingMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid ambient space: {0}")]
    InvalidAmbient(String),
    #[error("unsupported: positive-dimensional singular stratum {0:?} in the ambient space")]
    Unsupported(Vec<String>),
    #[error("hypersurface has degree zero in every grading component")]
    DegenerateDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("expected {expected} classes, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("class has {got} coordinates, ring expects {expected}")]
    ClassLength { expected: usize, got: usize },
    #[error("every factor must be P^1 for Omega^1 to split (factor {0} is not)")]
    NonP1Factor(usize),
    #[error("invalid ring presentation: {0}")]
    InvalidRing(String),
    #[error("integer overflow in intersection arithmetic")]
    Overflow,
    #[error("expression error at position {pos}: {msg}")]
    Expr { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("field size {0} is not a prime power <= 8")]
    UnsupportedFieldSize(u64),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("classes live in lattices of different rank")]
    RankMismatch,
    #[error("blowup count {0} outside 1..=8")]
    InvalidRank(usize),
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus is not valid JSON: {0}")]
    Json(String),
    #[error("entry {entry:?}: field `{field}`: {msg}")]
    Schema { entry: String, field: String, msg: String },
    #[error("entry {entry:?}: {msg}")]
    Input { entry: String, msg: String },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}
