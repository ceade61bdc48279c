//! Alternating sign matrices, their symmetry classes and U-turn variants.

mod class;
mod enumerate;
mod matrix;

pub use class::ClassTag;
pub use enumerate::{
    alternating_sign_vectors, census, census_with, enumerate, enumerate_by_filter, enumerate_with, is_asm,
    order_limit, visit, visit_with, x_enumeration, Census, Method,
};
pub use matrix::{is_alternating_sign_vector, minus_one_statistic, validate, SignMatrix, ValidationReport};
