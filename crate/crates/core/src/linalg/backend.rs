//! Unboxed element types for elimination. `Scalar` carries its context in
//! every value; inner loops work on raw residues or bare rationals instead.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{pow_mod, Scalar};

pub(crate) trait Backend {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - b*c`
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn lift(&self, s: &Scalar) -> Self::E;
    fn lower(&self, e: &Self::E) -> Scalar;
}

pub(crate) struct ModP(pub u64);

impl Backend for ModP {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> u64 {
        debug_assert!(*a != 0);
        pow_mod(*a, self.0 - 2, self.0)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        (a + self.0 - b * c % self.0) % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn lift(&self, s: &Scalar) -> u64 {
        s.residue().expect("prime-field scalar")
    }
    fn lower(&self, e: &u64) -> Scalar {
        Scalar::Mod {
            value: *e,
            modulus: self.0,
        }
    }
}

pub(crate) struct Rationals;

impl Backend for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub_mul(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
        a - b * c
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn lift(&self, s: &Scalar) -> BigRational {
        s.as_rational().expect("rational scalar").clone()
    }
    fn lower(&self, e: &BigRational) -> Scalar {
        Scalar::Rational(e.clone())
    }
}

/// Reduced row echelon form in place; returns pivot columns. Pivots are the
/// first nonzero entry scanning rows top to bottom, columns left to right.
pub(crate) fn rref<B: Backend>(b: &B, rows: &mut Vec<Vec<B::E>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !b.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = b.inv(&rows[r][c]);
        for j in c..cols {
            rows[r][j] = b.mul(&rows[r][j], &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || b.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !b.is_zero(&pivot_row[j]) {
                    row[j] = b.sub_mul(&row[j], &factor, &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    pivots
}

/// Kernel basis from an RREF: one vector per free column, with a 1 there,
/// zeros at the other free columns.
pub(crate) fn kernel_from_rref<B: Backend>(
    b: &B,
    rref_rows: &[Vec<B::E>],
    pivots: &[usize],
    cols: usize,
) -> Vec<Vec<B::E>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![b.zero(); cols];
            v[f] = b.one();
            for (row, &p) in rref_rows.iter().zip(pivots) {
                v[p] = b.neg(&row[f]);
            }
            v
        })
        .collect()
}
