//! Exact computer algebra for normal bundles, ideal-sheaf twists, quadric
//! discriminants and moduli dimension counts on Fano threefolds.
//!
//! Everything is computed over either the rationals or a prime field with
//! exact arithmetic. Cohomology of curves is reduced to ranks of matrices of
//! graded maps between pieces of a quotient ring `R/I`.

pub mod algebra;
pub mod chern;
pub mod error;
pub mod geometry;
pub mod graded;
pub mod linalg;
pub mod random;
pub mod rng;

pub use algebra::{monomial_basis, Field, HomogPoly, Monomial, Scalar, DEFAULT_PRIME};
pub use error::{Error, Result};
pub use linalg::ExactMatrix;
