use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{binomial, monomial_basis, Field, HomogPoly, Monomial, Scalar};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::rng::{derive_seed, SplitMix64};

/// Largest matrix size accepted by [`discriminant_form`].
pub const MAX_NET_SIZE: usize = 8;
/// Largest size for which the expansion-by-minors fallback is used.
pub const MINOR_EXPANSION_MAX: usize = 5;

const INTERPOLATION_SEED: u64 = 0x6e65_745f_6469_7363;
const INTERPOLATION_ATTEMPTS: u64 = 8;
/// Line budget of the rank scan, per requested discriminant point.
const LINES_PER_SAMPLE: usize = 20;

/// Net of quadrics `λ0 A + λ1 B + λ2 C` given by three symmetric matrices.
#[derive(Clone, Debug)]
pub struct QuadricNet {
    matrices: [ExactMatrix; 3],
}

/// Corank histogram over distinct discriminant points found by the scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankScan {
    pub histogram: BTreeMap<usize, usize>,
    pub points_found: usize,
    pub target: usize,
    pub lines_used: usize,
}

impl RankScan {
    pub fn sufficient(&self) -> bool {
        self.points_found >= self.target
    }

    /// True if every point found has exactly the given corank.
    pub fn all_corank(&self, corank: usize) -> bool {
        self.points_found > 0 && self.histogram.keys().all(|&c| c == corank)
    }

    pub fn max_corank(&self) -> usize {
        self.histogram.keys().copied().max().unwrap_or(0)
    }
}

impl QuadricNet {
    pub fn new(a: ExactMatrix, b: ExactMatrix, c: ExactMatrix) -> Result<Self> {
        let m = a.rows();
        let field = a.field();
        for mat in [&a, &b, &c] {
            if mat.field() != field {
                return Err(Error::ContextMismatch(field.to_string(), mat.field().to_string()));
            }
            if mat.rows() != m || mat.cols() != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    got: mat.rows().max(mat.cols()),
                });
            }
            if !mat.is_symmetric() {
                return Err(Error::Unsupported("net matrices must be symmetric".into()));
            }
        }
        if m == 0 {
            return Err(Error::Unsupported("empty net".into()));
        }
        Ok(Self { matrices: [a, b, c] })
    }

    /// Net spanned by three quadratic forms in the same ring.
    pub fn from_quadrics(quadrics: &[HomogPoly; 3]) -> Result<Self> {
        let field = quadrics[0].field();
        let [a, b, c] = quadrics
            .each_ref()
            .map(|q| q.quadric_gram().and_then(|g| ExactMatrix::from_rows(field, g)));
        Self::new(a?, b?, c?)
    }

    pub fn size(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn field(&self) -> Field {
        self.matrices[0].field()
    }

    pub fn matrices(&self) -> &[ExactMatrix; 3] {
        &self.matrices
    }

    /// The quadric `λ0 A + λ1 B + λ2 C`.
    pub fn member(&self, lambda: &[Scalar; 3]) -> Result<ExactMatrix> {
        let [a, b, c] = &self.matrices;
        ExactMatrix::combination(&[a, b, c], lambda)
    }

    /// The net `P N P^T` after a change of coordinates.
    pub fn transform(&self, p: &ExactMatrix) -> Result<Self> {
        let pt = p.transpose();
        let [a, b, c] = self
            .matrices
            .each_ref()
            .map(|m| p.mul(m).and_then(|pm| pm.mul(&pt)));
        Self::new(a?, b?, c?)
    }

    pub fn discriminant_value(&self, lambda: &[Scalar; 3]) -> Result<Scalar> {
        self.member(lambda)?.determinant()
    }
}

/// `det(λ0 A + λ1 B + λ2 C)` as a form of degree `m` in three variables,
/// recovered by interpolation through `C(m+2, 2)` seeded points. Falls back to
/// expansion by minors for `m <= 5` if every attempted point set is singular.
pub fn discriminant_form(net: &QuadricNet) -> Result<HomogPoly> {
    let m = net.size();
    if m > MAX_NET_SIZE {
        return Err(Error::ResourceCap(format!(
            "discriminant of a {m}x{m} net (limit {MAX_NET_SIZE})"
        )));
    }
    let field = net.field();
    let monomials = monomial_basis(3, m as u32);
    debug_assert_eq!(monomials.len() as u128, binomial(m as u64 + 2, 2));
    for attempt in 0..INTERPOLATION_ATTEMPTS {
        let mut rng = SplitMix64::new(derive_seed(INTERPOLATION_SEED, attempt));
        let points: Vec<[Scalar; 3]> = (0..monomials.len())
            .map(|_| std::array::from_fn(|_| crate::random::scalar(field, &mut rng)))
            .collect();
        let rows: Vec<Vec<Scalar>> = points
            .iter()
            .map(|pt| monomials.iter().map(|mono| eval_monomial(mono, pt, field)).collect())
            .collect();
        let vandermonde = ExactMatrix::from_rows(field, rows)?;
        if vandermonde.rank() < monomials.len() {
            continue;
        }
        let values = points
            .iter()
            .map(|pt| net.discriminant_value(pt))
            .collect::<Result<Vec<_>>>()?;
        let coeffs = vandermonde
            .solve(&values)?
            .ok_or_else(|| Error::InterpolationSingular("full-rank system without solution".into()))?;
        return HomogPoly::from_terms(3, m as u32, field, monomials.into_iter().zip(coeffs).collect::<Vec<_>>());
    }
    if m <= MINOR_EXPANSION_MAX {
        return discriminant_by_minors(net);
    }
    Err(Error::InterpolationSingular(format!(
        "{INTERPOLATION_ATTEMPTS} point sets failed for m = {m} over {field}"
    )))
}

/// Determinant of the linear-form matrix by expansion along rows, memoized
/// over column subsets.
pub fn discriminant_by_minors(net: &QuadricNet) -> Result<HomogPoly> {
    let m = net.size();
    if m > MAX_NET_SIZE {
        return Err(Error::ResourceCap(format!("minor expansion of a {m}x{m} net")));
    }
    let field = net.field();
    let lam: Vec<HomogPoly> = (0..3).map(|i| HomogPoly::var(3, i, field)).collect();
    let entry = |i: usize, j: usize| -> Result<HomogPoly> {
        let mut acc = HomogPoly::zero(3, 1, field);
        for (k, mat) in net.matrices.iter().enumerate() {
            acc = acc.add(&lam[k].scale(mat.get(i, j))?)?;
        }
        acc.with_degree(1)
    };
    // minors[mask] = det of rows 0..|mask| and the columns in mask
    let mut minors: Vec<HomogPoly> = vec![HomogPoly::zero(3, 0, field); 1 << m];
    minors[0] = HomogPoly::constant(3, field.one());
    for mask in 1usize..(1 << m) {
        let k = mask.count_ones() as usize;
        let mut acc = HomogPoly::zero(3, k as u32, field);
        for j in (0..m).filter(|j| mask & (1 << j) != 0) {
            let term = entry(k - 1, j)?.mul(&minors[mask ^ (1 << j)])?;
            let above = (mask >> (j + 1)).count_ones();
            acc = if above % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        minors[mask] = acc.with_degree(k as u32)?;
    }
    Ok(minors.pop().expect("nonempty"))
}

fn eval_monomial(mono: &Monomial, pt: &[Scalar; 3], field: Field) -> Scalar {
    let mut acc = field.one();
    for (x, &e) in pt.iter().zip(mono.exponents()) {
        for _ in 0..e {
            acc = &acc * x;
        }
    }
    acc
}

/// Corank stratification of the discriminant over a prime field.
///
/// Line `k` joins the basis point `e_{k mod 3}` of the net to a seeded random
/// point; the discriminant restricted to it is interpolated from `m + 1`
/// values and its roots are found by scanning the whole field (plus the point
/// at infinity). Distinct projective points are collected until `num_samples`
/// are found or `20 * num_samples` lines have been used.
pub fn discriminant_rank_scan(net: &QuadricNet, num_samples: usize, seed: u64) -> Result<RankScan> {
    let Field::Prime(p) = net.field() else {
        return Err(Error::Unsupported("rank scan needs a prime field".into()));
    };
    let field = net.field();
    let m = net.size();
    if (p as usize) <= m {
        return Err(Error::Unsupported(format!("GF({p}) too small for a {m}x{m} net")));
    }
    let budget = LINES_PER_SAMPLE * num_samples.max(1);
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut histogram = BTreeMap::new();
    let mut lines_used = 0;
    let node_values: Vec<Scalar> = (0..=m as i64).map(|u| field.from_i64(u)).collect();
    let vandermonde = ExactMatrix::from_rows(
        field,
        node_values
            .iter()
            .map(|u| {
                let mut row = Vec::with_capacity(m + 1);
                let mut pow = field.one();
                for _ in 0..=m {
                    row.push(pow.clone());
                    pow = &pow * u;
                }
                row
            })
            .collect(),
    )?;

    for k in 0..budget {
        if seen.len() >= num_samples {
            break;
        }
        lines_used += 1;
        let mut rng = SplitMix64::new(derive_seed(seed, k as u64));
        let base: [Scalar; 3] = std::array::from_fn(|i| if i == k % 3 { field.one() } else { field.zero() });
        let dir: [Scalar; 3] = std::array::from_fn(|_| crate::random::scalar(field, &mut rng));
        if dir.iter().all(Scalar::is_zero) {
            continue;
        }
        let on_line = |u: &Scalar| -> [Scalar; 3] { std::array::from_fn(|i| &base[i] + &(u * &dir[i])) };
        let values = node_values
            .iter()
            .map(|u| net.discriminant_value(&on_line(u)))
            .collect::<Result<Vec<_>>>()?;
        let coeffs: Vec<u64> = vandermonde
            .solve(&values)?
            .ok_or_else(|| Error::InterpolationSingular("restriction to a line".into()))?
            .iter()
            .map(|c| c.residue().expect("prime field"))
            .collect();
        if coeffs.iter().all(|&c| c == 0) {
            // the line lies in the discriminant (or the net is degenerate)
            continue;
        }
        let mut candidates: Vec<[Scalar; 3]> = Vec::new();
        for u in 0..p {
            let mut acc = 0u64;
            for &c in coeffs.iter().rev() {
                acc = (acc * u + c) % p;
            }
            if acc == 0 {
                let pt = on_line(&field.from_i64(u as i64));
                // zero when dir is proportional to base
                if !pt.iter().all(Scalar::is_zero) {
                    candidates.push(pt);
                }
            }
        }
        // point at infinity: the leading coefficient is D(dir)
        if coeffs[m] == 0 {
            candidates.push(dir.clone());
        }
        for pt in candidates {
            if seen.len() >= num_samples {
                break;
            }
            if seen.insert(normalize(&pt, p)) {
                let corank = net.member(&pt)?.corank();
                *histogram.entry(corank).or_insert(0) += 1;
            }
        }
    }
    if seen.is_empty() {
        return Err(Error::InsufficientSamples {
            found: 0,
            wanted: num_samples,
        });
    }
    Ok(RankScan {
        histogram,
        points_found: seen.len(),
        target: num_samples,
        lines_used,
    })
}

/// Projective representative with first nonzero coordinate 1.
fn normalize(pt: &[Scalar; 3], p: u64) -> Vec<u64> {
    let lead = pt.iter().find(|s| !s.is_zero()).expect("nonzero point");
    let inv = lead.inv().expect("nonzero");
    pt.iter()
        .map(|s| (s * &inv).residue().expect("prime field") % p)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(field: Field, d: &[i64]) -> ExactMatrix {
        let d: Vec<Scalar> = d.iter().map(|&x| field.from_i64(x)).collect();
        ExactMatrix::diagonal(&d, field).unwrap()
    }

    #[test]
    fn diagonal_net_discriminant() {
        let f = Field::Rational;
        let net = QuadricNet::new(
            ExactMatrix::identity(6, f),
            diag(f, &[0, 1, 2, 3, 4, 5]),
            ExactMatrix::zeros(6, 6, f),
        )
        .unwrap();
        let mut expected = HomogPoly::constant(3, f.one());
        for i in 0..6 {
            let factor = HomogPoly::var(3, 0, f)
                .add(&HomogPoly::var(3, 1, f).scale(&f.from_i64(i)).unwrap())
                .unwrap();
            expected = expected.mul(&factor).unwrap();
        }
        let d = discriminant_form(&net).unwrap();
        assert_eq!(d.degree(), 6);
        assert_eq!(d, expected);
    }

    #[test]
    fn minors_match_interpolation() {
        let f = Field::Prime(32003);
        let mut rng = SplitMix64::new(9);
        let [a, b, c] = std::array::from_fn(|_| crate::random::symmetric_matrix(4, f, &mut rng));
        let net = QuadricNet::new(a, b, c).unwrap();
        assert_eq!(discriminant_form(&net).unwrap(), discriminant_by_minors(&net).unwrap());
    }

    #[test]
    fn planted_corank_two_is_found() {
        let f = Field::Prime(32003);
        let mut rng = SplitMix64::new(5);
        let a = diag(f, &[1, 1, 1, 1, 0, 0]);
        let b = crate::random::symmetric_matrix(6, f, &mut rng);
        let c = crate::random::symmetric_matrix(6, f, &mut rng);
        let net = QuadricNet::new(a, b, c).unwrap();
        let scan = discriminant_rank_scan(&net, 30, 77).unwrap();
        assert!(scan.max_corank() >= 2);
        assert!(scan.sufficient());
    }

    #[test]
    fn tiny_field_scan_reports_shortfall() {
        // P^2 over GF(5) has 31 points, so 500 discriminant points cannot exist;
        // lines whose direction is proportional to the base point must not
        // produce the zero vector
        let f = Field::Prime(5);
        for seed in 0..20 {
            let mut rng = SplitMix64::new(seed);
            let a = diag(f, &[1, 2, 3]);
            let b = crate::random::symmetric_matrix(3, f, &mut rng);
            let c = crate::random::symmetric_matrix(3, f, &mut rng);
            let net = QuadricNet::new(a, b, c).unwrap();
            match discriminant_rank_scan(&net, 500, seed) {
                Ok(scan) => assert!(!scan.sufficient() && scan.points_found <= 31),
                Err(e) => assert!(matches!(e, Error::InsufficientSamples { .. })),
            }
        }
    }

    #[test]
    fn rejects_asymmetric_and_rational_scan() {
        let f = Field::Rational;
        let asym = ExactMatrix::from_i64(f, &[vec![1, 2], vec![0, 1]]).unwrap();
        let id = ExactMatrix::identity(2, f);
        assert!(QuadricNet::new(asym, id.clone(), id.clone()).is_err());
        let net = QuadricNet::new(id.clone(), id.clone(), id).unwrap();
        assert!(discriminant_rank_scan(&net, 5, 1).is_err());
    }
}
