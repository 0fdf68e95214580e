use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group mismatch: rank {0} vs rank {1}")]
    GroupMismatch(usize, usize),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("the zero function has no minimum valuation function")]
    ZeroFunction,
    #[error("residue undefined: {0} has negative valuation")]
    NegativeValuation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("composition lands on a pole: {0}")]
    ConstantPole(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
