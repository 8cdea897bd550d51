use thiserror::Error;

use crate::cactus::CactusDefect;
use crate::grassmann::Parity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator count {n} outside 1..={max}")]
    GeneratorCount { n: usize, max: usize },
    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("operands have {0} and {1} generators")]
    MismatchedGenerators(usize, usize),
    #[error("exponential needs an element without constant term")]
    ConstantTerm,
    #[error("exponential needs an even element, got {0:?} parity")]
    NotEven(Parity),
    #[error("index {0} repeated")]
    RepeatedIndex(usize),
    #[error("matrix rows have inconsistent lengths")]
    Ragged,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkewSymmetric { row: usize, col: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("weight matrix has nonzero diagonal entry at {0}")]
    NonzeroDiagonal(usize),
    #[error("Pfaffian needs an even dimension, got {0}")]
    OddDimension(usize),
    #[error("index sets have sizes {0} and {1}")]
    IndexSetSizes(usize, usize),
    #[error("invalid tensor arity {arity}: {reason}")]
    InvalidArity { arity: usize, reason: &'static str },
    #[error("no tensor of arity {0} supplied")]
    MissingArity(usize),
    #[error("tensor family mixes ground sets of size {0} and {1}")]
    MixedGroundSets(usize, usize),
    #[error("{what}: n = {n} exceeds the exhaustive limit {limit} (use a forced guard to override)")]
    GuardExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("position {position} outside 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("sequence length {0} is even; the identity needs an odd length")]
    EvenLength(usize),
    #[error("not a cactus: {0}")]
    NotACactus(CactusDefect),
    #[error("sequence {0:?} has repeated or out-of-range entries")]
    InvalidSequence(Vec<usize>),
    #[error("backend unsupported: {0}")]
    Unsupported(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
