use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid game configuration: {0}")]
    InvalidConfig(String),

    #[error("binomial coefficient C({n}, {k}) overflows 64 bits")]
    BinomialOverflow { n: u64, k: u64 },

    #[error("rank {rank} is outside the ticket space [0, {size})")]
    RankOutOfRange { rank: u64, size: u64 },

    #[error("invalid ticket: {0}")]
    InvalidTicket(String),

    #[error("unknown store {store} (have {stores} stores)")]
    UnknownStore { store: usize, stores: usize },

    #[error("undefined input: {0}")]
    UndefinedInput(String),

    #[error("rank-deficient regression: {0}")]
    RankDeficient(String),

    #[error("no root: {0}")]
    NoRoot(String),

    #[error("expected value is not unimodal: {0}")]
    NotUnimodal(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
}
