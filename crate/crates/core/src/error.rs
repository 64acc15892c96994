use thiserror::Error;

/// Errors raised by the library. Search outcomes that are merely negative or
/// inconclusive are reported through result types, not through this enum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty generator list")]
    NoGenerators,

    #[error("group order exceeds ceiling {ceiling}")]
    OrderCeiling { ceiling: u128 },

    #[error("group of order {order} exceeds the {what} ceiling {ceiling}")]
    EnumerationCeiling {
        what: &'static str,
        order: u128,
        ceiling: u128,
    },

    #[error("invalid parameters for {family}: {message}")]
    InvalidParameters { family: String, message: String },

    #[error("declared order {declared} for '{id}' does not match computed order {computed}")]
    DeclaredOrderMismatch {
        id: String,
        declared: u128,
        computed: u128,
    },

    #[error("duplicate catalog id '{0}'")]
    DuplicateId(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("coset enumeration overflowed {max_cosets} cosets")]
    CosetOverflow { max_cosets: usize },

    #[error("genus {0} rejected: surfaces of genus 0 and 1 carry actions of unbounded finite order, so no maximal finite subgroups exist")]
    LowGenus(i64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid geometry profile: {0}")]
    InvalidProfile(String),

    #[error("unknown group '{0}'")]
    UnknownGroup(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
