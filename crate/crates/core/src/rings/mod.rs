//! Exact arithmetic kernel: integers, rationals, `Z_r`, polynomial quotient
//! extensions, truncated power series and dense linear algebra.

mod descriptor;
mod element;
mod extension;
mod matrix;
mod poly;
mod series;
pub mod text;

pub(crate) use descriptor::mod_pow;
pub use descriptor::{is_odd_prime, QuotientKind, QuotientRing, RingDescriptor, SeriesRing, Value, MAX_DEPTH};
pub use element::{ring_arith, ArithOp, RingElement};
pub use extension::{
    adjoin_primitive_root, adjoin_quadratic, is_perfect_square, legendre, multiplicative_order, roots_mod,
    squarefree_part,
};
pub use matrix::{det_and_nullspace, Matrix};
pub use poly::{cyclotomic_polynomial, euler_phi};
pub use series::{series_from_coeffs, series_mul_truncate};
