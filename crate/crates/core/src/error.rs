use thiserror::Error;

/// Errors raised by the valuation, geometry and cone routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("numerator is not divisible by the denominator product (degree {degree} is inconsistent)")]
    NotDivisible { degree: usize },
    #[error("polygon is not two-dimensional")]
    NotFullDim,
    #[error("edge {0} cannot be flipped")]
    NotFlippable(String),
    #[error("polynomial is not invariant under group {0}")]
    NotInvariant(String),
    #[error("bad degree {0}: expected an odd rank greater than one")]
    BadDegree(u32),
    #[error("no two-homogeneous lift exists for the given polynomial")]
    NoPairing,
    #[error("pairing solution is not unique (nullity {0})")]
    PairingNotUnique(usize),
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("point {0} is not a vertex of the polygon")]
    NotAVertex(String),
    #[error("cone is not pointed and two-dimensional")]
    NotPointed,
    #[error("cone is not unimodular")]
    NotUnimodular,
    #[error("numerator of R is not symmetric under the coordinate swap")]
    AsymmetricR,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
