//! Left-invariant forms and the Chevalley–Eilenberg differential.

mod differential;
mod kform;
mod literal;

pub use differential::{
    ce_differential, ce_differential_leibniz, ce_differential_pointwise, de_one, differential_matrix,
    differential_matrix_with,
};
pub use kform::{basis_label, basis_tuples, binomial, sort_with_sign, KForm};
pub use literal::{parse_form, parse_form_of_degree};
