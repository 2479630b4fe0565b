//! Independent verification routes for the Newton-tree invariants.
//!
//! Nothing here uses Newton polygons of general ideals, Newton maps or trees.
//! The checks rely only on the algebra layer: resultants for intersection
//! numbers, random combinations for generic elements, and staircase hulls for
//! monomial ideals.

pub mod error;
pub mod intersection;
pub mod modular;
pub mod monomial;
pub mod random;

pub use error::OracleError;
pub use intersection::{e_oracle, finite_codim_generators, intersection_mult, mult_oracle, shear};
pub use monomial::{
    lojasiewicz_monomial_bruteforce, monomial_closure, simple_ideal_string,
    simple_monomial_generators, staircase_hull, MonomialClosure, MonomialFace,
};
pub use random::RandomSource;
