use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("division by an expression that normalizes to zero")]
    DivisionByZeroExpression,
    #[error("cannot divide by `{0}`: only single-term divisors are invertible")]
    NonInvertible(String),
    #[error("pole at the evaluation point")]
    PoleAtPoint,
    #[error("exponential term with nonzero exponent at the evaluation point")]
    TranscendentalValue,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("invalid algebroid: {0}")]
    InvalidAlgebroid(String),
    #[error("invalid Nambu structure: {0}")]
    InvalidNambu(String),
    #[error("not weight homogeneous: {0}")]
    NotWeightHomogeneous(String),
    #[error("the anchor images of the coordinate differentials do not span the dual bundle")]
    SpanningHypothesisFails,
    #[error("top form is not a ring multiple of the orientation form")]
    NonFactorableQuotient,
    #[error("the multisection vanishes at the point")]
    SingularPoint,
    #[error("no nonvanishing constant coefficient certifies regularity on the chart")]
    NotRegular,
    #[error("subcomplex violation: {0}")]
    SubcomplexViolation(String),
    #[error("no potential found: the modular class is not shown to be null")]
    ModularClassNotNull,
    #[error("bracket violates the Leibniz identity on {0}")]
    NotLeibniz(String),
    #[error("not a representation: {0}")]
    NotRepresentation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
