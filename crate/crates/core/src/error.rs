use crate::polycore::Shape;
use thiserror::Error;

/// Errors surfaced by fallible operations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: Shape, right: Shape },

    #[error("{axis} index {index} out of range 1..={bound}")]
    IndexOutOfRange {
        axis: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("cannot embed a polynomial with {from} rows into {to} rows")]
    EmbedShrink { from: usize, to: usize },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("permutation on {len} points applied to {cols} columns")]
    PermutationSize { len: usize, cols: usize },

    #[error("images do not form a bijection on 1..=n")]
    NotBijection,

    #[error("polarization order bound {max_p} is below the maximal total degree {degree}")]
    PowerTooSmall { max_p: u32, degree: u32 },

    #[error("family is not stable: swapping columns {a} and {b} maps a member outside the span of {witness}")]
    NotStable { a: usize, b: usize, witness: String },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("input is not symmetric under column exchange")]
    NotSymmetric,

    #[error("non-integer coefficient {value} in {context}")]
    NonIntegerCoefficient {
        context: &'static str,
        value: String,
    },

    #[error("negative multiplicity {value} at lambda = {lambda}, mu = {mu}")]
    NegativeMultiplicity {
        lambda: String,
        mu: String,
        value: String,
    },

    #[error("graded component {degree:?} is not closed under the column action")]
    UnstableComponent { degree: Vec<u32> },

    #[error("dimension reconciliation failed at degree {degree:?}: table gives {from_table}, basis gives {from_basis}")]
    Reconciliation {
        degree: Vec<u32>,
        from_table: String,
        from_basis: String,
    },

    #[error("generator degree {degree} is below the minimum {min} for this operation")]
    DegreeTooSmall { degree: u32, min: u32 },

    #[error("all coordinates are zero; no projective point")]
    ZeroPoint,

    #[error("unsupported generator: {reason}")]
    UnsupportedGenerator { reason: String },

    #[error("parse error in {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("expansion is not unique in degree {degree}")]
    NonUniqueExpansion { degree: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
