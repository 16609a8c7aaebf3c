use thiserror::Error;

use crate::poly::Frame;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("parameter {name} must be nonnegative, got {value}")]
    NegativeParameter { name: &'static str, value: String },
    #[error("need at least 2 variables, got {0}")]
    InvalidNvars(usize),
    #[error("frame mismatch: expected {expected}, found {found}")]
    FrameMismatch { expected: String, found: Frame },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("node ({row},{col}) is outside the Ferrers diagram")]
    NodeOutsideDiagram { row: usize, col: usize },
    #[error("not a partition: {0}")]
    NotPartition(String),
    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<usize>),
    #[error("singular triangular solve for {0}")]
    SingularSolve(String),
    #[error("Pochhammer factor (a+1)_{0} vanishes")]
    VanishingPochhammer(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
