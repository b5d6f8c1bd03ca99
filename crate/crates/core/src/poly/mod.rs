//! Multilinear binary polynomials and signed supports.

mod format;
mod oracle;
mod polynomial;
mod signed;
mod support;

pub use format::{parse_polynomial, parse_polynomial_with_vars, write_polynomial};
pub use oracle::{
    brute_force_min, brute_force_min_capped, is_binary_nonnegative, is_submodular, mask_to_point,
    min_value, point_to_mask, BRUTE_FORCE_CAP, SUBMODULAR_CAP,
};
pub use polynomial::Polynomial;
pub use signed::{
    ambient_support, classify, decompose, first_positive_nonlinear, is_nns, signed_support,
    within, Class, Sign, SignedDecomposition, SignedSupport,
};
pub use support::Support;
