//! Exact scalars, monomials and sparse homogeneous polynomials.

mod monomial;
mod poly;
mod scalar;
mod text;

pub use monomial::{binomial, monomial_basis, Monomial};
pub use poly::HomogPoly;
pub use scalar::{Field, Scalar, DEFAULT_PRIME};
pub(crate) use scalar::pow_mod;
