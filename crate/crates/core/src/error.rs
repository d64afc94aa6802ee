use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("table is not a Latin square: {0}")]
    NotLatin(String),
    #[error("no two-sided identity")]
    NoIdentity,
    #[error("element {element} out of range for order {order}")]
    OutOfRange { element: usize, order: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("not an S-subsemigroup: {0}")]
    NotSSubsemigroup(String),
    #[error("cross inverse forms disagree: {0}")]
    CrossInverseForms(String),
    #[error("order {order} exceeds the exhaustive envelope of {limit}")]
    Envelope { order: usize, limit: usize },
    #[error("unknown name '{0}'")]
    UnknownName(String),
}
