//! Exact arithmetic over `Q` for the Newton algorithm on plane ideals.
//!
//! The crate provides reduced big rationals ([`Rat`]), dense univariate
//! polynomials ([`UPoly`]), sparse bivariate polynomials ([`BPoly`]) with a
//! text grammar, bivariate gcd and squarefree decomposition, resultants in
//! `y`, exact rational root finding and ideal generator lists
//! ([`IdealGens`]).

pub mod bpoly;
pub mod error;
pub mod gcd;
pub mod ideal;
pub mod parse;
pub mod rat;
pub mod resultant;
pub mod upoly;

pub use bpoly::{BPoly, Exp};
pub use error::AlgebraError;
pub use gcd::{gcd, gcd_many, squarefree_decompose};
pub use ideal::{parse_ideal, IdealGens};
pub use parse::parse_poly;
pub use rat::Rat;
pub use resultant::resultant_y;
pub use upoly::{rational_roots, UPoly};
