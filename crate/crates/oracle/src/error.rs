//! Error type of the oracle layer.

use thiserror::Error;

/// Failures of the brute-force oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// The two curves share a branch through the origin.
    #[error("curves share the factor {0} through the origin")]
    CommonFactor(String),
    /// An input does not pass through the origin.
    #[error("input does not vanish at the origin")]
    NotVanishingAtOrigin,
    /// The ideal is not primary to the maximal ideal.
    #[error("ideal does not have finite codimension")]
    NotFiniteCodim,
    /// A generator is not a monomial.
    #[error("ideal is not generated by monomials")]
    NotMonomial,
    /// Independent linear changes gave different intersection numbers.
    #[error("linear changes disagree: {0:?}")]
    ShearDisagreement(Vec<u64>),
    /// No random draw produced a usable pair.
    #[error("no generic draw succeeded")]
    NoGenericDraw,
}
