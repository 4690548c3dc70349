#![allow(dead_code)]

/// Textbook row reduction over GF(p) on plain residues.
pub fn oracle_rank_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let inv = |x: u64| {
        let (mut r, mut b, mut e) = (1u64, x % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let s = inv(a[rank][c]);
        for x in a[rank].iter_mut() {
            *x = *x * s % p;
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for k in 0..cols {
                    a[r][k] = (a[r][k] + p * p - f * a[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}


use fano_core::geometry::CurveInAmbient;
use fano_core::rng::SplitMix64;
use fano_core::{random, Field, HomogPoly};

fn combine(row: &[HomogPoly], gens: &[HomogPoly]) -> HomogPoly {
    let mut acc: Option<HomogPoly> = None;
    for (a, g) in row.iter().zip(gens) {
        let term = a.mul(g).unwrap();
        acc = Some(match acc {
            None => term,
            Some(s) => s.add(&term).unwrap(),
        });
    }
    acc.unwrap()
}

fn curve(gens: Vec<HomogPoly>, relations: Vec<Vec<HomogPoly>>, degree: i64, genus: i64) -> CurveInAmbient {
    let ambient = relations.iter().map(|row| combine(row, &gens)).collect();
    CurveInAmbient::new(gens, ambient, relations, degree, genus).unwrap()
}

/// `V(l1, l2, q)` inside the cubic `a1 l1 + a2 l2 + a3 q` in `P^4`.
pub fn conic_on_cubic(field: Field, seed: u64) -> CurveInAmbient {
    let mut rng = SplitMix64::new(seed);
    let mut f = |d| random::form(5, d, field, &mut rng);
    let gens = vec![f(1), f(1), f(2)];
    let row = vec![f(2), f(2), f(1)];
    curve(gens, vec![row], 2, 0)
}

pub enum QuarticVariant {
    Generic,
    /// `L1 = x0`, forcing a linear dependence.
    Engineered,
    /// `L1 = M1 = N1 = 0`.
    Degenerate,
}

/// `V(x0, x1, x2, R, S)` in three quadrics `x0 Li + x1 Mi + x2 Ni + ai R + bi S`
/// of `P^6`, with `a1 = b1 = 0`.
pub fn elliptic_quartic(field: Field, seed: u64, variant: QuarticVariant) -> CurveInAmbient {
    let mut rng = SplitMix64::new(seed);
    let x = |i| HomogPoly::var(7, i, field);
    let gens = vec![
        x(0),
        x(1),
        x(2),
        random::form(7, 2, field, &mut rng),
        random::form(7, 2, field, &mut rng),
    ];
    let mut relations = Vec::new();
    for i in 0..3 {
        let mut row: Vec<HomogPoly> = (0..3).map(|_| random::form(7, 1, field, &mut rng)).collect();
        for _ in 0..2 {
            let c = if i == 0 { field.zero() } else { random::scalar(field, &mut rng) };
            row.push(HomogPoly::constant(7, c));
        }
        relations.push(row);
    }
    match variant {
        QuarticVariant::Generic => {}
        QuarticVariant::Engineered => relations[0][0] = x(0),
        QuarticVariant::Degenerate => {
            for j in 0..3 {
                relations[0][j] = HomogPoly::zero(7, 1, field);
            }
        }
    }
    curve(gens, relations, 4, 1)
}

/// `V(q0, q1, q2)` in `P^4` inside the quartic `q0 q3 + q1 q4 + q2 q5`.
pub fn canonical_in_quartic(qs: [HomogPoly; 6]) -> CurveInAmbient {
    let [q0, q1, q2, q3, q4, q5] = qs;
    curve(vec![q0, q1, q2], vec![vec![q3, q4, q5]], 8, 5)
}

pub fn random_canonical(field: Field, seed: u64) -> CurveInAmbient {
    let mut rng = SplitMix64::new(seed);
    canonical_in_quartic(std::array::from_fn(|_| random::form(5, 2, field, &mut rng)))
}

pub fn witness_canonical(field: Field) -> CurveInAmbient {
    let p = |s: &str| HomogPoly::parse(s, 5, field).unwrap();
    canonical_in_quartic([p("x0^2"), p("x1^2"), p("x2^2"), p("x3^2"), p("x4^2"), p("x0*x1 + x2*x3")])
}
