//! Error type shared by the algebra layer.

use thiserror::Error;

/// Errors raised by parsing and polynomial algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// The input text does not follow the polynomial grammar.
    #[error("syntax error at byte {offset}: {message}")]
    Syntax {
        /// Byte offset of the offending character.
        offset: usize,
        /// Human-readable description.
        message: String,
    },
    /// An operation needs a nonzero polynomial.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    /// Both resultant arguments have `y`-degree zero.
    #[error("resultant in y of two polynomials that are constant in y")]
    BothConstantInY,
    /// An ideal file or generator list contains no nonzero generator.
    #[error("ideal has no nonzero generator")]
    EmptyIdeal,
}
