//! Seeded random scalars, forms and symmetric matrices.

use crate::algebra::{monomial_basis, Field, HomogPoly, Scalar};
use crate::linalg::ExactMatrix;
use crate::rng::SplitMix64;

/// Bound on the absolute value of random rational coefficients.
pub const RATIONAL_COEFF_BOUND: i64 = 20;

/// Uniform residue over a prime field; a small integer over the rationals.
pub fn scalar(field: Field, rng: &mut SplitMix64) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.below(p) as i64),
        Field::Rational => field.from_i64(rng.range_i64(-RATIONAL_COEFF_BOUND, RATIONAL_COEFF_BOUND)),
    }
}

pub fn nonzero_scalar(field: Field, rng: &mut SplitMix64) -> Scalar {
    loop {
        let s = scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Dense random form: every monomial of the degree gets a random coefficient.
pub fn form(num_vars: usize, degree: u32, field: Field, rng: &mut SplitMix64) -> HomogPoly {
    let terms: Vec<_> = monomial_basis(num_vars, degree)
        .into_iter()
        .map(|m| (m, scalar(field, rng)))
        .collect();
    HomogPoly::from_terms(num_vars, degree, field, terms).expect("monomials have the right degree")
}

/// Random linear form in the given variables only.
pub fn linear_form_in(num_vars: usize, vars: &[usize], field: Field, rng: &mut SplitMix64) -> HomogPoly {
    let mut out = HomogPoly::zero(num_vars, 1, field);
    for &i in vars {
        let term = HomogPoly::var(num_vars, i, field)
            .scale(&scalar(field, rng))
            .expect("same field");
        out = out.add(&term).expect("same degree");
    }
    out.with_degree(1).expect("zero or linear")
}

pub fn symmetric_matrix(n: usize, field: Field, rng: &mut SplitMix64) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, n, field);
    for i in 0..n {
        for j in i..n {
            let v = scalar(field, rng);
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

pub fn vector(n: usize, field: Field, rng: &mut SplitMix64) -> Vec<Scalar> {
    (0..n).map(|_| scalar(field, rng)).collect()
}
