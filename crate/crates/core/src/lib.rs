//! Frobenius powers, Frobenius closures and related characteristic-p
//! computations for quotients of F_p[x_1, ..., x_n].

pub mod cohomology;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod ringstruct;

pub use error::{Error, Result};
pub use field::{field_inv, FieldElement};
pub use groebner::{Ideal, VectorSpaceDimension};
pub use monomial::{compare_monomials, Monomial, MonomialOrder};
pub use poly::{frobenius_power_poly, frobenius_substitute, poly_add, poly_mul, Polynomial};
pub use ring::PolyRing;
pub use ringstruct::QuotientRing;
