use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("line {line} duplicates line {first}")]
    DuplicateLine { line: usize, first: usize },

    #[error("arrangement is empty")]
    Empty,

    #[error("arrangement is not essential: all lines are parallel")]
    NonEssential,

    #[error("{n} lines exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("chamber {0} is bounded")]
    BoundedChamber(usize),

    #[error("opposite of chamber {0} is not a chamber")]
    InfeasibleOpposite(usize),

    #[error("sign vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("no generic flag found after {0} candidate directions")]
    FlagExhausted(usize),

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("chamber {0} is not in ch^1")]
    NotInCh1(usize),

    #[error("inconsistent dimensions: {0}")]
    Dimension(String),

    #[error("random generator exhausted after {0} attempts")]
    GeneratorExhausted(usize),

    #[error("monodromy line {line}: {msg}")]
    Monodromy { line: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
