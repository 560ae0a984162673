//! Groebner bases and the ideal operations built on them.

pub mod buchberger;
mod cache;
pub mod ops;
pub mod order;

pub use buchberger::{buchberger, buchberger_with, GbOptions, GroebnerBasis, CACHE_ENV, DEFAULT_BUDGET};
pub use ops::{
    affine_dimension, eliminate, ideals_equal, intersect_ideals, is_unit_ideal, normal_form,
    projective_dimension, radical_membership, reduced_basis,
};
pub use order::{BaseOrder, MonomialOrder};
