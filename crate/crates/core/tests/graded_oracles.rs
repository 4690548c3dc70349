mod common;

use common::oracle_rank_mod_p;
use fano_core::algebra::binomial;
use fano_core::graded::{graded_map_matrix, koszul_hilbert, GradedMap, GradedQuotient};
use fano_core::rng::SplitMix64;
use fano_core::{monomial_basis, random, Error, ExactMatrix, Field, HomogPoly};
use proptest::prelude::*;

const P: Field = Field::Prime(32003);

fn parse(s: &str, n: usize, f: Field) -> HomogPoly {
    HomogPoly::parse(s, n, f).unwrap()
}

fn witness_quadrics(f: Field) -> Vec<HomogPoly> {
    ["x0^2", "x1^2", "x2^2", "x3^2", "x4^2", "x0*x1 + x2*x3"]
        .iter()
        .map(|s| parse(s, 5, f))
        .collect()
}

fn generic(num_vars: usize, degrees: &[u32], seed: u64) -> GradedQuotient {
    let mut rng = SplitMix64::new(seed);
    let gens = degrees.iter().map(|&d| random::form(num_vars, d, P, &mut rng)).collect();
    GradedQuotient::new(num_vars, P, gens).unwrap()
}

#[test]
fn hilbert_function_examples() {
    let quartic = generic(4, &[2, 2], 1);
    assert_eq!(quartic.quotient_dim(2).unwrap(), 8);
    assert_eq!(quartic.quotient_dim(3).unwrap(), 12);
    let canonical = generic(5, &[2, 2, 2], 2);
    assert_eq!(canonical.quotient_dim(1).unwrap(), 5);
    assert_eq!(canonical.quotient_dim(2).unwrap(), 12);
    assert_eq!(canonical.ideal_dim(1).unwrap(), 0);
    let mut rng = SplitMix64::new(3);
    let conic = GradedQuotient::new(
        5,
        P,
        vec![
            random::form(5, 1, P, &mut rng),
            random::form(5, 1, P, &mut rng),
            random::form(5, 2, P, &mut rng),
        ],
    )
    .unwrap();
    assert_eq!(conic.ideal_dim(1).unwrap(), 2);
}

/// Span of all generator multiples in degree t, reduced by textbook elimination.
fn brute_force_ideal_dim(gens: &[HomogPoly], num_vars: usize, t: u32) -> usize {
    let basis = monomial_basis(num_vars, t);
    let mut rows = Vec::new();
    for g in gens {
        if g.degree() > t {
            continue;
        }
        for m in monomial_basis(num_vars, t - g.degree()) {
            let prod = g.mul_monomial(&m);
            rows.push(
                basis
                    .iter()
                    .map(|b| prod.coefficient(b).residue().unwrap())
                    .collect(),
            );
        }
    }
    oracle_rank_mod_p(rows, 32003)
}

#[test]
fn witness_ideal_span_rank_golden() {
    let gens = witness_quadrics(P);
    let q = GradedQuotient::new(5, P, gens.clone()).unwrap();
    let oracle = brute_force_ideal_dim(&gens, 5, 3);
    assert_eq!(oracle, 30);
    assert_eq!(q.ideal_dim(3).unwrap(), oracle);
    assert_eq!(q.quotient_dim(3).unwrap(), 5);
    let rational = GradedQuotient::new(5, Field::Rational, witness_quadrics(Field::Rational)).unwrap();
    assert_eq!(rational.ideal_dim(3).unwrap(), 30);
}

#[test]
fn witness_multiplication_maps() {
    for f in [Field::Rational, P] {
        let ring = GradedQuotient::new(5, f, Vec::new()).unwrap();
        let row = GradedMap::new(vec![2; 6], 0, witness_quadrics(f)).unwrap();
        let onto = graded_map_matrix(&ring, std::slice::from_ref(&row), 4).unwrap();
        assert_eq!((onto.rows(), onto.cols(), onto.rank()), (70, 90, 70));
        let inj = graded_map_matrix(&ring, &[row], 3).unwrap();
        assert_eq!((inj.rows(), inj.cols()), (35, 30));
        assert_eq!(inj.rank_kernel().kernel.len(), 0);
    }
}

#[test]
fn map_matrix_structure() {
    let q = generic(4, &[2, 2], 7);
    let one = HomogPoly::constant(4, P.one());
    let id = graded_map_matrix(&q, &[GradedMap::new(vec![0], 0, vec![one]).unwrap()], 3).unwrap();
    assert_eq!(id, ExactMatrix::identity(12, P));

    let mut rng = SplitMix64::new(8);
    let rows: Vec<GradedMap> = (0..3)
        .map(|_| {
            let c = vec![random::form(4, 1, P, &mut rng), random::form(4, 2, P, &mut rng)];
            GradedMap::new(vec![-1, 0], -2, c).unwrap()
        })
        .collect();
    let full = graded_map_matrix(&q, &rows, 1).unwrap();
    let stacked = graded_map_matrix(&q, &rows[..1], 1)
        .unwrap()
        .vstack(&graded_map_matrix(&q, &rows[1..], 1).unwrap())
        .unwrap();
    assert_eq!(full, stacked);
    let permuted = vec![rows[2].clone(), rows[0].clone(), rows[1].clone()];
    assert_eq!(graded_map_matrix(&q, &permuted, 1).unwrap().rank(), full.rank());
}

#[test]
fn caps_are_enforced() {
    let q = generic(7, &[2], 4);
    assert!(matches!(q.quotient_dim(13), Err(Error::ResourceCap(_))));
    assert!(matches!(q.quotient_dim(12), Err(Error::ResourceCap(_))));
    let small = generic(3, &[1, 1], 5);
    assert_eq!(small.quotient_dim(12).unwrap(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dimensions_add_up(seed: u64, n in 1usize..6, degs in prop::collection::vec(1u32..4, 0..4), t in 0i64..5) {
        let mut rng = SplitMix64::new(seed);
        let gens: Vec<HomogPoly> = degs.iter().map(|&d| {
            // shared factors so non-regular sequences also occur
            if d >= 2 && rng.below(3) == 0 {
                HomogPoly::var(n, 0, P).mul(&random::form(n, d - 1, P, &mut rng)).unwrap()
            } else {
                random::form(n, d, P, &mut rng)
            }
        }).collect();
        let q = GradedQuotient::new(n, P, gens).unwrap();
        let total = binomial((n - 1) as u64 + t as u64, t as u64) as usize;
        prop_assert_eq!(q.ideal_dim(t).unwrap() + q.quotient_dim(t).unwrap(), total);
    }

    #[test]
    fn complete_intersections_follow_koszul(seed: u64, n in 2usize..7, degs in prop::collection::vec(1u32..4, 1..4), t in 0i64..=6) {
        prop_assume!(degs.len() <= n);
        let q = generic(n, &degs, seed);
        match q.quotient_dim(t) {
            Ok(d) => prop_assert_eq!(d as u64, koszul_hilbert(&degs, n, t)),
            Err(Error::ResourceCap(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn one_linear_form_drops_a_variable(seed: u64, n in 2usize..7, t in 0i64..6) {
        let q = generic(n, &[1], seed);
        prop_assume!(!q.generators()[0].is_zero());
        let want = binomial((n - 2) as u64 + t as u64, t as u64) as usize;
        prop_assert_eq!(q.quotient_dim(t).unwrap(), want);
    }
}
