use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("recurrence needs at least one coefficient")]
    EmptyRecurrence,

    #[error("expected {coeffs} initial values, got {initials}")]
    LengthMismatch { coeffs: usize, initials: usize },

    #[error("c_0 must be nonzero for a recurrence of order {order}")]
    ZeroConstantCoefficient { order: usize },

    #[error("operation requires an irreducible matrix")]
    Reducible,

    #[error("no sign change of the polynomial on [{lo}, {hi}]")]
    NoSignChange { lo: String, hi: String },

    #[error("out of regime: {0}")]
    OutOfRegime(&'static str),

    #[error("iteration did not converge within {iterations} steps")]
    NonConvergence { iterations: usize },

    #[error("value must be positive")]
    NonPositive,

    #[error("base must be an integer >= 2, got {0}")]
    InvalidBase(u64),

    #[error("term a_{index} is not positive")]
    NegativeTerm { index: u64 },

    #[error("stream ended after {got} positive terms, {needed} needed")]
    InsufficientTerms { needed: usize, got: usize },

    #[error("index polynomial must be nonconstant")]
    ConstantIndexPoly,

    #[error("index polynomial gives Q({n}) = {value} < 1")]
    IndexBelowOne { n: u64, value: i128 },

    #[error("index polynomial overflows at n = {n}")]
    IndexOverflow { n: u64 },

    #[error("dominant root structure unknown; cannot enumerate exceptional bases")]
    UnknownRhoStructure,

    #[error("dominant root equals 1; log_b of it is 0 in every base")]
    UnitRoot,

    #[error("budget exceeded: {what} = {value} > {cap}")]
    BudgetExceeded { what: &'static str, value: u64, cap: u64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }
}
