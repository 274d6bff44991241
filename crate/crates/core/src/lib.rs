//! Cohomological support varieties of monomial ideals.
//!
//! The support of a monomial quotient `R = Q/(f_1, ..., f_n)` is the set of
//! points `a ∈ 𝔸ⁿ` where the Taylor complex twisted by `Σ a_i e_i` has
//! nonzero homology, together with the origin. This crate computes it exactly,
//! either pointwise or symbolically through a decomposition of the Taylor
//! complex into simplicial-cochain blocks.

pub mod complex;
pub mod diagram;
pub mod enumerate6;
pub mod error;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod minors;
pub mod monomial;
pub mod poly;
pub mod simplicial;
pub mod support;

pub use error::{Error, Result};
pub use field::{FieldPoint, Fp};
pub use monomial::{Monomial, MonomialSeq, Subset, SubsetTable};
pub use poly::RatPoly;
