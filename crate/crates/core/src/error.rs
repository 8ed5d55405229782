use thiserror::Error;

use crate::index::IndexPair;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight {0} is odd; only even weights are supported")]
    OddWeight(u32),

    #[error("level {0} is not supported here (expected one of {1})")]
    UnsupportedLevel(u32, &'static str),

    #[error("argument {0} must be odd and at least 3")]
    InvalidOddArgument(i64),

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("empty interval: lower bound {lower} is not below upper bound {upper}")]
    EmptyInterval { lower: String, upper: String },

    #[error("root counting needs a nonzero polynomial")]
    ZeroPolynomial,

    #[error("denominator series has zero constant term")]
    ZeroConstantTerm,

    #[error("index pair {pair} is not in the totally odd set for weight {weight}")]
    IndexOutOfSet { pair: IndexPair, weight: u32 },

    #[error("polynomial has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("unsupported zeta symbol: {0}")]
    UnsupportedSymbol(String),

    #[error("kernel is not invariant under C^{level} at weight {weight}")]
    InvarianceFailure { weight: u32, level: u32 },

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
