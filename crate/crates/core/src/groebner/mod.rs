//! Gröbner bases over F_p and the ideal operations built on them.

mod buchberger;
mod ideal;
mod reduce;

pub use buchberger::{is_groebner_basis, reduced_groebner_basis};
pub use ideal::{
    buchberger, colon, colon_ideal, eliminate, ideal_equal, ideal_member, ideal_subset, intersect,
    krull_dimension, vspace_dimension, Ideal, VectorSpaceDimension,
};
pub use reduce::{divide, normal_form, Division};
