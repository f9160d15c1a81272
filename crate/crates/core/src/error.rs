use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("not a permutation of 1..{n}: {images:?}")]
    NotAPermutation { n: usize, images: Vec<usize> },

    #[error("index out of range: ({i}, {j}) for n = {n}")]
    IndexOutOfRange { n: usize, i: usize, j: usize },

    #[error("word length {len} exceeds the subword enumeration cap {cap}")]
    WordCapExceeded { len: usize, cap: usize },

    #[error("n = {n} exceeds the enumeration cap {cap}")]
    EnumerationCapExceeded { n: usize, cap: usize },

    #[error("invalid context: n = {n}, k = {k} (need n >= 1 and 2k <= n)")]
    InvalidContext { n: usize, k: usize },

    #[error("invalid orbit label: {0}")]
    InvalidLabel(String),

    #[error("label {0} is not upper-triangular")]
    NotUpperTriangular(String),

    #[error("({i},{j}) is not a positive root of the stabilizer")]
    NotARoot { i: usize, j: usize },

    #[error("word {0} is not reduced")]
    NotReduced(String),

    #[error("word evaluates to {got}, expected {expected}")]
    WrongEvaluation { got: String, expected: String },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("independent checks disagree: {0}")]
    OracleDisagreement(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for the two cap variants; the CLI maps them to their own exit code.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::WordCapExceeded { .. } | Error::EnumerationCapExceeded { .. }
        )
    }
}
