mod common;

use common::oracle_rank_mod_p;
use fano_core::random;
use fano_core::rng::SplitMix64;
use fano_core::{ExactMatrix, Field, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

/// Elimination with naive rational pivoting.
fn oracle_rank_rational(a: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, piv);
        for r in rank + 1..rows {
            let f = &m[r][c] / &m[rank][c];
            for k in 0..cols {
                let t = &f * &m[rank][k];
                m[r][k] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant by the permutation expansion.
fn oracle_det(a: &[Vec<i64>]) -> BigInt {
    fn go(a: &[Vec<i64>], row: usize, used: &mut Vec<bool>, sign: i64) -> BigInt {
        let n = a.len();
        if row == n {
            return BigInt::from(sign);
        }
        let mut acc = BigInt::zero();
        let mut s = sign;
        for c in 0..n {
            if used[c] {
                continue;
            }
            used[c] = true;
            acc += BigInt::from(a[row][c]) * go(a, row + 1, used, s);
            used[c] = false;
            s = -s;
        }
        acc
    }
    go(a, 0, &mut vec![false; a.len()], 1)
}

fn random_int_matrix(rows: usize, cols: usize, bound: i64, rank_cap: Option<usize>, rng: &mut SplitMix64) -> Vec<Vec<i64>> {
    match rank_cap {
        None => (0..rows)
            .map(|_| (0..cols).map(|_| rng.range_i64(-bound, bound)).collect())
            .collect(),
        Some(k) => {
            // product of rows x k and k x cols factors
            let l = random_int_matrix(rows, k, bound, None, rng);
            let r = random_int_matrix(k, cols, bound, None, rng);
            (0..rows)
                .map(|i| (0..cols).map(|j| (0..k).map(|t| l[i][t] * r[t][j]).sum()).collect())
                .collect()
        }
    }
}

#[test]
fn rank_examples() {
    let q = Field::Rational;
    let id = ExactMatrix::identity(5, q).rank_kernel();
    assert_eq!((id.rank, id.kernel.len()), (5, 0));
    let z = ExactMatrix::zeros(3, 7, q).rank_kernel();
    assert_eq!((z.rank, z.kernel.len()), (0, 7));
    let diag = |d: &[i64]| {
        ExactMatrix::diagonal(&d.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>(), q).unwrap()
    };
    assert_eq!(diag(&[1, 1, 1, 1, 1, 0]).corank(), 1);
    assert_eq!(ExactMatrix::identity(7, q).corank(), 0);
    assert_eq!(diag(&[1, 1, 1, 1, 1, 0, 0]).corank(), 2);
}

#[test]
fn seeded_6x9_over_f7_matches_textbook_elimination() {
    let f = Field::Prime(7);
    for seed in 0..200u64 {
        let mut rng = SplitMix64::new(seed);
        let rows: Vec<Vec<u64>> = (0..6).map(|_| (0..9).map(|_| rng.below(7)).collect()).collect();
        let m = ExactMatrix::from_rows(
            f,
            rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x as i64)).collect()).collect(),
        )
        .unwrap();
        assert_eq!(m.rank(), oracle_rank_mod_p(rows, 7), "seed {seed}");
    }
}

#[test]
fn low_rank_products_over_f7() {
    let f = Field::Prime(7);
    let mut rng = SplitMix64::new(17);
    for k in 0..=6 {
        let a = random_int_matrix(6, 9, 3, Some(k), &mut rng);
        let res: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&x| x.rem_euclid(7) as u64).collect()).collect();
        let m = ExactMatrix::from_i64(f, &a).unwrap();
        assert_eq!(m.rank(), oracle_rank_mod_p(res, 7));
        assert!(m.rank() <= k);
    }
}

#[test]
fn determinant_matches_permutation_expansion() {
    let mut rng = SplitMix64::new(99);
    for n in 1..=6 {
        for _ in 0..5 {
            let a = random_int_matrix(n, n, 9, None, &mut rng);
            let want = oracle_det(&a);
            let q = ExactMatrix::from_i64(Field::Rational, &a).unwrap().determinant().unwrap();
            assert_eq!(q, Field::Rational.from_bigint(&want));
            let p = Field::Prime(32003);
            let d = ExactMatrix::from_i64(p, &a).unwrap().determinant().unwrap();
            assert_eq!(d, p.from_bigint(&want));
        }
    }
}

#[test]
fn solve_finds_solutions_and_detects_inconsistency() {
    let q = Field::Rational;
    let m = ExactMatrix::from_i64(q, &[vec![1, 2], vec![2, 4]]).unwrap();
    let b: Vec<Scalar> = [3, 6].iter().map(|&x| q.from_i64(x)).collect();
    let x = m.solve(&b).unwrap().unwrap();
    assert_eq!(m.mul_vec(&x).unwrap(), b);
    let bad: Vec<Scalar> = [3, 7].iter().map(|&x| q.from_i64(x)).collect();
    assert!(m.solve(&bad).unwrap().is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bareiss_matches_naive_rational_pivoting(seed: u64, rows in 1usize..=12, cols in 1usize..=12, k in 0usize..=12) {
        let mut rng = SplitMix64::new(seed);
        let a = random_int_matrix(rows, cols, 50, Some(k.min(rows).min(cols)), &mut rng);
        let m = ExactMatrix::from_i64(Field::Rational, &a).unwrap();
        prop_assert_eq!(m.rank(), oracle_rank_rational(&a));
    }

    #[test]
    fn rank_is_transpose_invariant(seed: u64, rows in 1usize..=10, cols in 1usize..=10, k in 0usize..=10, prime: bool) {
        let mut rng = SplitMix64::new(seed);
        let a = random_int_matrix(rows, cols, 5, Some(k.min(rows).min(cols)), &mut rng);
        let field = if prime { Field::Prime(32003) } else { Field::Rational };
        let m = ExactMatrix::from_i64(field, &a).unwrap();
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_vectors_are_annihilated(seed: u64, rows in 1usize..=9, cols in 1usize..=9, k in 0usize..=9, prime: bool) {
        let mut rng = SplitMix64::new(seed);
        let a = random_int_matrix(rows, cols, 7, Some(k.min(rows).min(cols)), &mut rng);
        let field = if prime { Field::Prime(32003) } else { Field::Rational };
        let m = ExactMatrix::from_i64(field, &a).unwrap();
        let rk = m.rank_kernel();
        prop_assert_eq!(rk.rank + rk.kernel.len(), cols);
        for v in &rk.kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    /// Bad reduction mod the default prime has probability about 1/p per
    /// matrix; a failure here means the seed hit it and needs a note.
    #[test]
    fn rational_and_modular_ranks_agree(seed: u64, rows in 1usize..=12, cols in 1usize..=12, k in 0usize..=12) {
        let mut rng = SplitMix64::new(seed);
        let a = random_int_matrix(rows, cols, 20, Some(k.min(rows).min(cols)), &mut rng);
        let rq = ExactMatrix::from_i64(Field::Rational, &a).unwrap().rank();
        let rp = ExactMatrix::from_i64(Field::Prime(32003), &a).unwrap().rank();
        prop_assert!(rq >= rp);
        prop_assert_eq!(rq, rp);
    }

    #[test]
    fn random_symmetric_matrices_are_symmetric(seed: u64, n in 1usize..8) {
        let mut rng = SplitMix64::new(seed);
        prop_assert!(random::symmetric_matrix(n, Field::Rational, &mut rng).is_symmetric());
    }
}
