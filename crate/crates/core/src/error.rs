use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("rotation index {k} out of range 1..={len}")]
    RotationOutOfRange { k: usize, len: usize },

    #[error("word is not balanced ({ones} ones, {zeros} zeros)")]
    Unbalanced { ones: usize, zeros: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("oracle refused: word length {len} exceeds the limit of {limit}")]
    OracleLimit { len: usize, limit: usize },

    #[error("not a Catalan word: after position {position} there are {zeros} zeros but only {ones} ones")]
    NotCatalan {
        position: usize,
        ones: usize,
        zeros: usize,
    },

    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("compute budget exceeded: {0}")]
    Budget(String),

    #[error("unknown name {0:?}")]
    Unknown(String),
}
