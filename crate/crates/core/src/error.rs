use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("column index {col} out of range in row {row} (n = {n})")]
    ColumnOutOfRange { row: usize, col: usize, n: usize },

    #[error("expected {expected} neighbor lists, got {got}")]
    RowCountMismatch { expected: usize, got: usize },

    #[error("graph side of size {0} exceeds the supported width of {max}", max = crate::bigraph::MAX_SIDE)]
    TooWide(usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("nonexistence family is only defined for 1 <= m <= 4 (got m = {0})")]
    FamilyOutOfRange(usize),

    #[error("model assigns {got} variables, instance has {expected}")]
    ModelLength { expected: usize, got: usize },

    #[error("unknown builtin witness {0:?}")]
    UnknownWitness(String),

    #[error("solver model rejected: {0}")]
    ModelRejected(String),

    #[error("search side of size {0} is too large to enumerate column patterns")]
    SearchTooWide(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
