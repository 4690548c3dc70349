//! Fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Result of fraction-free forward elimination.
pub(crate) struct Echelon {
    /// Integer row echelon form; only the first `pivots.len()` rows matter.
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    /// Parity of the row swaps performed.
    pub swaps_odd: bool,
}

/// Scales each rational row by the lcm of its denominators.
pub(crate) fn clear_denominators(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut scales = Vec::with_capacity(rows.len());
    let ints = rows
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let out = row.iter().map(|q| q.numer() * (&l / q.denom())).collect();
            scales.push(l);
            out
        })
        .collect();
    (ints, scales)
}

/// Bareiss elimination with first-nonzero pivoting. Every division below is
/// exact: the entries after step k are (k+1)-minors of the input.
pub(crate) fn eliminate(mut m: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps_odd = false;
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            swaps_odd = !swaps_odd;
        }
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() {
                    v
                } else {
                    debug_assert!((&v % &prev).is_zero(), "inexact Bareiss division");
                    v / &prev
                };
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows: m,
        pivots,
        swaps_odd,
    }
}

/// Determinant of a square integer matrix.
pub(crate) fn determinant(m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let e = eliminate(m, n);
    if e.pivots.len() < n {
        return BigInt::zero();
    }
    let d = e.rows[n - 1][n - 1].clone();
    if e.swaps_odd {
        -d
    } else {
        d
    }
}

/// Kernel basis by back substitution from the integer echelon form. For each
/// free column f the vector has a 1 at f and zeros at the other free columns,
/// which is exactly the basis read off a reduced echelon form.
pub(crate) fn kernel(e: &Echelon, cols: usize) -> Vec<Vec<BigRational>> {
    let mut is_pivot = vec![false; cols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let rank = e.pivots.len();
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for k in (0..rank).rev() {
                let pc = e.pivots[k];
                let row = &e.rows[k];
                let mut acc = BigRational::zero();
                for j in pc + 1..cols {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        acc += BigRational::from_integer(row[j].clone()) * &v[j];
                    }
                }
                v[pc] = -acc / BigRational::from_integer(row[pc].clone());
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(ints(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(determinant(ints(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            determinant(ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])),
            BigInt::from(-3)
        );
        assert_eq!(determinant(ints(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn rank_deficient_with_skipped_columns() {
        let e = eliminate(ints(&[&[0, 1, 2, 3], &[0, 2, 4, 7], &[0, 3, 6, 10]]), 4);
        assert_eq!(e.pivots, vec![1, 3]);
        let k = kernel(&e, 4);
        assert_eq!(k.len(), 2);
        assert!(k.iter().all(|v| v.iter().any(|x| !x.is_zero())));
        assert!(!k[0][0].is_negative());
    }
}
