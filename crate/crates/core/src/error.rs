use thiserror::Error;

use crate::morphism::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("world set must be nonempty")]
    EmptyWorldSet,

    #[error("duplicate world label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown world label {0:?}")]
    UnknownLabel(String),

    #[error("{what} cap exceeded: {actual} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("index {index} out of range for {len} worlds")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("subset mask {mask:#b} is not within {len} worlds")]
    MaskOutOfRange { mask: u64, len: usize },

    #[error("a multi-relational frame needs at least one relation")]
    EmptyRelationSet,

    #[error("table has {actual} entries, expected {expected}")]
    TableSize { expected: usize, actual: usize },

    #[error("relations over {left} and {right} worlds cannot be combined")]
    ArityMismatch { left: usize, right: usize },

    #[error("world sets do not match: {0}")]
    WorldSetMismatch(&'static str),

    #[error("element {0:#b} is not an atom")]
    NotAnAtom(u64),

    #[error("algebra is not normal (box 0 = 0 and binary additivity required)")]
    NotNormal,

    #[error("frame is not {0}-downward directed")]
    NotDirected(String),

    #[error("neighborhood frame is not {0}-complete")]
    NotComplete(String),

    #[error("selector cap exceeded: {product} selectors > {limit}")]
    SelectorCap { product: u128, limit: usize },

    #[error("{category} morphism validation failed: {witness}")]
    InvalidMorphism {
        category: &'static str,
        witness: Witness,
    },

    #[error("map is not a bijection")]
    NotBijective,

    #[error("exhaustive enumeration refused: {0}")]
    EnumerationCap(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("invalid kappa {0:?}: expected a positive integer or `all`")]
    InvalidKappa(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
