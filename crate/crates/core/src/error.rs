use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension d = {0} (must be at least 1)")]
    InvalidDimension(usize),

    #[error("dimension d = {d} exceeds the configured maximum {max}")]
    DimensionTooLarge { d: usize, max: usize },

    #[error("invalid order n = {0}: {1}")]
    InvalidOrder(i64, &'static str),

    #[error("non-finite coordinate at position {0}")]
    NonFinite(usize),

    #[error("size mismatch: expected {expected} entries, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("not a homogeneous index {0:?}: {1}")]
    NotHomogeneous(Vec<i64>, &'static str),

    #[error("index {index:?} lies outside {set}")]
    OutsideSet { index: Vec<i64>, set: &'static str },

    #[error("point lies outside the fundamental domain")]
    OutsideDomain,

    #[error("entries are not non-increasing: {0:?}")]
    Unsorted(Vec<i64>),

    #[error("operation requires exact rational coordinates")]
    InexactPoint,

    #[error("conjugation symmetry violated by {0:e}")]
    ConjugationSymmetry(f64),

    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    Budget { what: &'static str, needed: u128, cap: u128 },

    #[error("missing sample for node {0:?}")]
    MissingSample(Vec<i64>),

    #[error("sample key {0:?} is not a node of the interpolation set")]
    UnexpectedSample(Vec<i64>),

    #[error("node set is empty")]
    EmptyNodeSet,

    #[error("linear system for the degree-{0} layer is rank deficient")]
    RankDeficient(usize),

    #[error("removable singularity: {0}")]
    Singular(&'static str),

    #[error("malformed input: {0}")]
    Malformed(String),
}
