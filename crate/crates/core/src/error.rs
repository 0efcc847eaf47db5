use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed edge-list input. `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("binomial coefficient C({n}, {r}) overflows 128-bit range")]
    BinomialOverflow { n: u64, r: i64 },

    #[error("k-clique count overflows 128-bit range")]
    CountOverflow,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("exhaustive search refused: graph has {n} vertices, limit is {limit}")]
    TooLarge { n: usize, limit: usize },
}

impl Error {
    pub fn is_overflow(&self) -> bool {
        matches!(self, Error::BinomialOverflow { .. } | Error::CountOverflow)
    }
}
