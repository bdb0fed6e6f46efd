use thiserror::Error;

/// Errors raised by the library. Vertex indices in messages are 1-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("matrix is not skew-symmetrisable")]
    NotSkewSymmetrisable,

    #[error("matrix is not symmetrisable")]
    NotSymmetrisable,

    #[error("diagonal entry {index} is {value}, expected {expected}")]
    BadDiagonal { index: usize, value: i64, expected: i64 },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("diagram is not of finite type: {0}")]
    NotFiniteType(String),

    #[error("rank {rank} exceeds the supported bound {max}")]
    RankTooLarge { rank: usize, max: usize },

    #[error("unsupported Dynkin type `{0}`")]
    UnsupportedType(String),

    #[error("edge weight {0} is not in 0..=3")]
    BadWeight(u8),

    #[error("letter {letter} out of range for {generators} generators")]
    LetterOutOfRange { letter: usize, generators: usize },

    #[error("generator {generator} has no involution relation")]
    MissingInvolution { generator: usize },

    #[error("coset table is incomplete")]
    IncompleteTable,

    #[error("coset enumeration exceeded the cap of {cap} live cosets")]
    CosetOverflow { cap: usize },

    #[error("mutation class exceeded the cap of {cap} members")]
    ClassOverflow { cap: usize },

    #[error("{0} is not a root")]
    NotARoot(String),

    #[error("zero vector has no coroot")]
    ZeroVector,

    #[error("vertex set is not contained in the neighbours of {vertex}")]
    NotNeighbours { vertex: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
