//! Graded pieces of quotient rings `R/I` and matrices of graded maps between
//! free `R/I`-modules.
//!
//! The degree-t piece of `I` is the span of the generator multiples
//! `m * g`; no saturation is performed. A basis of `(R/I)_t` is the set of
//! monomials that are not leading monomials of any element of `I_t`, which is
//! the same set a greedy scan in ascending grevlex order would pick.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::algebra::{binomial, monomial_basis, Field, HomogPoly, Monomial, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, RowSpace, MAX_MATRIX_ENTRIES};

/// Highest degree any graded piece may be requested in.
pub const MAX_DEGREE: i64 = 12;

/// `R/I` with `R = k[x0..xn]` and `I` generated by homogeneous forms.
pub struct GradedQuotient {
    num_vars: usize,
    field: Field,
    generators: Vec<HomogPoly>,
    cache: Mutex<BTreeMap<u32, Arc<DegreePiece>>>,
}

/// Degree-t data: all monomials, the reduced basis of `I_t`, and the chosen
/// monomial basis of `(R/I)_t`.
pub struct DegreePiece {
    degree: u32,
    /// Ascending grevlex.
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Columns are the monomials in descending order, so a pivot is a
    /// leading monomial.
    ideal: RowSpace,
    /// Indices into `monomials` of the standard monomials, ascending.
    standard: Vec<usize>,
}

impl DegreePiece {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.rank()
    }

    pub fn quotient_dim(&self) -> usize {
        self.standard.len()
    }

    pub fn standard_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.standard.iter().map(|&i| &self.monomials[i])
    }

    fn column(&self, mono_idx: usize) -> usize {
        self.monomials.len() - 1 - mono_idx
    }

    fn dense(&self, f: &HomogPoly) -> Vec<Scalar> {
        let mut v = vec![f.field().zero(); self.monomials.len()];
        for (m, c) in f.terms() {
            v[self.column(self.index[m])] = c.clone();
        }
        v
    }

    /// Coordinates of `f mod I_t` in the standard monomial basis.
    fn coordinates(&self, f: &HomogPoly) -> Vec<Scalar> {
        let reduced = self.ideal.reduce(&self.dense(f));
        self.standard
            .iter()
            .map(|&i| reduced[self.column(i)].clone())
            .collect()
    }
}

impl GradedQuotient {
    pub fn new(num_vars: usize, field: Field, generators: Vec<HomogPoly>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::Unsupported("polynomial ring needs a variable".into()));
        }
        for g in &generators {
            if g.num_vars() != num_vars {
                return Err(Error::VariableMismatch {
                    expected: num_vars,
                    got: g.num_vars(),
                });
            }
            if g.field() != field {
                return Err(Error::ContextMismatch(field.to_string(), g.field().to_string()));
            }
        }
        Ok(Self {
            num_vars,
            field,
            generators,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[HomogPoly] {
        &self.generators
    }

    /// The degree-t piece, computed once and cached.
    pub fn piece(&self, t: i64) -> Result<Arc<DegreePiece>> {
        if t < 0 {
            return Err(Error::InconsistentDegrees(format!("negative degree {t}")));
        }
        if t > MAX_DEGREE {
            return Err(Error::ResourceCap(format!(
                "degree {t} exceeds the cap of {MAX_DEGREE}"
            )));
        }
        let t = t as u32;
        if let Some(p) = self.cache.lock().expect("cache lock").get(&t) {
            return Ok(Arc::clone(p));
        }
        // computed outside the lock; a racing thread computes the same piece
        let piece = Arc::new(self.build_piece(t)?);
        let mut cache = self.cache.lock().expect("cache lock");
        Ok(Arc::clone(cache.entry(t).or_insert(piece)))
    }

    fn build_piece(&self, t: u32) -> Result<DegreePiece> {
        let monomials = monomial_basis(self.num_vars, t);
        let n = monomials.len();
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let active: Vec<&HomogPoly> = self
            .generators
            .iter()
            .filter(|g| !g.is_zero() && g.degree() <= t)
            .collect();
        let candidates: usize = active
            .iter()
            .map(|g| binomial((self.num_vars - 1 + (t - g.degree()) as usize) as u64, (t - g.degree()) as u64) as usize)
            .sum();
        if candidates.min(n).saturating_mul(n) > MAX_MATRIX_ENTRIES {
            return Err(Error::ResourceCap(format!(
                "ideal piece in degree {t} needs a {}x{n} matrix",
                candidates.min(n)
            )));
        }
        let mut ideal = RowSpace::new(self.field, n);
        'outer: for g in active {
            for m in monomial_basis(self.num_vars, t - g.degree()) {
                if ideal.rank() == n {
                    break 'outer;
                }
                let prod = g.mul_monomial(&m);
                ideal.insert_sparse(prod.terms().map(|(mm, c)| (n - 1 - index[mm], c)));
            }
        }
        let mut leading = vec![false; n];
        for &c in ideal.pivots() {
            leading[n - 1 - c] = true;
        }
        let standard = (0..n).filter(|&i| !leading[i]).collect();
        Ok(DegreePiece {
            degree: t,
            monomials,
            index,
            ideal,
            standard,
        })
    }

    /// `dim (R/I)_t`; zero in negative degrees.
    pub fn quotient_dim(&self, t: i64) -> Result<usize> {
        if t < 0 {
            return Ok(0);
        }
        Ok(self.piece(t)?.quotient_dim())
    }

    /// `dim I_t`; zero in negative degrees.
    pub fn ideal_dim(&self, t: i64) -> Result<usize> {
        if t < 0 {
            return Ok(0);
        }
        Ok(self.piece(t)?.ideal_dim())
    }

    pub fn contains(&self, f: &HomogPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.iter().all(Scalar::is_zero))
    }

    /// Coordinates of `f` in `(R/I)_{deg f}` with respect to the standard
    /// monomials in ascending order.
    pub fn normal_form(&self, f: &HomogPoly) -> Result<Vec<Scalar>> {
        if f.num_vars() != self.num_vars {
            return Err(Error::VariableMismatch {
                expected: self.num_vars,
                got: f.num_vars(),
            });
        }
        if f.field() != self.field {
            return Err(Error::ContextMismatch(self.field.to_string(), f.field().to_string()));
        }
        Ok(self.piece(f.degree() as i64)?.coordinates(f))
    }
}

/// One row of a map `⊕_i (R/I)(-a_i) -> (R/I)(-b)`, `(r_i) ↦ Σ c_i r_i`.
#[derive(Clone, Debug)]
pub struct GradedMap {
    source_twists: Vec<i64>,
    target_twist: i64,
    coefficients: Vec<HomogPoly>,
}

impl GradedMap {
    /// Every nonzero `c_i` must have degree `a_i - b`; zero entries may carry
    /// any declared degree.
    pub fn new(source_twists: Vec<i64>, target_twist: i64, coefficients: Vec<HomogPoly>) -> Result<Self> {
        if source_twists.len() != coefficients.len() {
            return Err(Error::LengthMismatch {
                expected: source_twists.len(),
                got: coefficients.len(),
            });
        }
        for (a, c) in source_twists.iter().zip(&coefficients) {
            if !c.is_zero() && c.degree() as i64 != a - target_twist {
                return Err(Error::InconsistentDegrees(format!(
                    "coefficient {c} has degree {}, map needs {}",
                    c.degree(),
                    a - target_twist
                )));
            }
        }
        Ok(Self {
            source_twists,
            target_twist,
            coefficients,
        })
    }

    pub fn source_twists(&self) -> &[i64] {
        &self.source_twists
    }

    pub fn target_twist(&self) -> i64 {
        self.target_twist
    }

    pub fn coefficients(&self) -> &[HomogPoly] {
        &self.coefficients
    }
}

/// Matrix of the stacked rows in degree `t`: columns are the blocks
/// `(R/I)_{t-a_i}`, rows the blocks `(R/I)_{t-b_j}`, each in standard
/// monomial coordinates. Negative-degree blocks are empty.
pub fn graded_map_matrix(q: &GradedQuotient, rows: &[GradedMap], t: i64) -> Result<ExactMatrix> {
    let Some(first) = rows.first() else {
        return Err(Error::Unsupported("graded map with no rows".into()));
    };
    let sources = first.source_twists();
    if let Some(bad) = rows.iter().find(|r| r.source_twists() != sources) {
        return Err(Error::InconsistentDegrees(format!(
            "rows disagree on source twists: {:?} vs {:?}",
            sources,
            bad.source_twists()
        )));
    }
    for r in rows {
        for c in r.coefficients() {
            if c.num_vars() != q.num_vars() {
                return Err(Error::VariableMismatch {
                    expected: q.num_vars(),
                    got: c.num_vars(),
                });
            }
            if c.field() != q.field() {
                return Err(Error::ContextMismatch(q.field().to_string(), c.field().to_string()));
            }
        }
    }
    let source_dims = sources
        .iter()
        .map(|a| q.quotient_dim(t - a))
        .collect::<Result<Vec<_>>>()?;
    let target_dims = rows
        .iter()
        .map(|r| q.quotient_dim(t - r.target_twist()))
        .collect::<Result<Vec<_>>>()?;
    let ncols: usize = source_dims.iter().sum();
    let nrows: usize = target_dims.iter().sum();
    if nrows.saturating_mul(ncols) > MAX_MATRIX_ENTRIES {
        return Err(Error::ResourceCap(format!(
            "graded map matrix {nrows}x{ncols} exceeds {MAX_MATRIX_ENTRIES} entries"
        )));
    }
    let mut m = ExactMatrix::zeros(nrows, ncols, q.field());
    let mut row_off = 0;
    for (r, &tdim) in rows.iter().zip(&target_dims) {
        let mut col_off = 0;
        for ((c, &a), &sdim) in r.coefficients().iter().zip(sources).zip(&source_dims) {
            if sdim > 0 && tdim > 0 && !c.is_zero() {
                let src = q.piece(t - a)?;
                for (k, mono) in src.standard_monomials().enumerate() {
                    let image = c.mul_monomial(mono);
                    for (i, v) in q.normal_form(&image)?.into_iter().enumerate() {
                        if !v.is_zero() {
                            m.set(row_off + i, col_off + k, v);
                        }
                    }
                }
            }
            col_off += sdim;
        }
        row_off += tdim;
    }
    Ok(m)
}

/// Coefficient of `z^t` in `Π (1 - z^{d_i}) / (1 - z)^{num_vars}`, the
/// Hilbert function of a complete intersection of the given degrees.
pub fn koszul_hilbert(degrees: &[u32], num_vars: usize, t: i64) -> u64 {
    if t < 0 {
        return 0;
    }
    // numerator Π (1 - z^d) as a dense coefficient vector
    let mut num: Vec<i128> = vec![1];
    for &d in degrees {
        let mut next = vec![0i128; num.len() + d as usize];
        for (k, &c) in num.iter().enumerate() {
            next[k] += c;
            next[k + d as usize] -= c;
        }
        num = next;
    }
    let mut acc: i128 = 0;
    for (k, &c) in num.iter().enumerate() {
        let rest = t - k as i64;
        if rest < 0 || c == 0 {
            continue;
        }
        let series = if num_vars == 0 {
            i128::from(rest == 0)
        } else {
            binomial((num_vars - 1) as u64 + rest as u64, rest as u64) as i128
        };
        acc += c * series;
    }
    u64::try_from(acc).expect("Hilbert function is non-negative")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str, n: usize, f: Field) -> HomogPoly {
        HomogPoly::parse(s, n, f).unwrap()
    }

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_hilbert(&[2, 2], 4, 3), 12);
        assert_eq!(koszul_hilbert(&[2, 3], 6, 1), 6);
        assert_eq!(koszul_hilbert(&[2, 2, 2], 7, 2), 25);
        assert_eq!(koszul_hilbert(&[], 5, 4), 70);
        assert_eq!(koszul_hilbert(&[1], 4, -1), 0);
    }

    #[test]
    fn conic_ideal_has_two_linear_forms() {
        let f = Field::Prime(32003);
        let gens = vec![
            parse("x0 + 2*x3", 5, f),
            parse("x1 - x4", 5, f),
            parse("x2^2 + x3*x4", 5, f),
        ];
        let q = GradedQuotient::new(5, f, gens).unwrap();
        assert_eq!(q.ideal_dim(1).unwrap(), 2);
        for t in 0..5 {
            assert_eq!(q.quotient_dim(t).unwrap() as u64, 2 * t as u64 + 1);
        }
    }

    #[test]
    fn one_linear_form_drops_a_variable() {
        let f = Field::Rational;
        let q = GradedQuotient::new(4, f, vec![parse("x0 - x1 + 3*x3", 4, f)]).unwrap();
        for t in 0..6 {
            assert_eq!(
                q.quotient_dim(t).unwrap() as u128,
                binomial(2 + t as u64, t as u64)
            );
        }
    }

    #[test]
    fn standard_monomials_avoid_leading_terms() {
        let f = Field::Rational;
        // leading monomial of x0*x1 + x2^2 in grevlex is x0*x1
        let q = GradedQuotient::new(3, f, vec![parse("x0*x1 + x2^2", 3, f)]).unwrap();
        let piece = q.piece(2).unwrap();
        let std: Vec<String> = piece.standard_monomials().map(|m| m.to_string()).collect();
        assert_eq!(std, vec!["x2^2", "x1*x2", "x0*x2", "x1^2", "x0^2"]);
        // x0*x1 ≡ -x2^2
        let nf = q.normal_form(&parse("x0*x1", 3, f)).unwrap();
        assert_eq!(nf[0], f.from_i64(-1));
        assert!(nf[1..].iter().all(Scalar::is_zero));
    }

    #[test]
    fn identity_row_gives_identity_matrix() {
        let f = Field::Prime(101);
        let q = GradedQuotient::new(4, f, vec![parse("x0^2 + x1*x2", 4, f)]).unwrap();
        let one = HomogPoly::constant(4, f.one());
        let row = GradedMap::new(vec![0], 0, vec![one]).unwrap();
        let m = graded_map_matrix(&q, &[row], 3).unwrap();
        assert_eq!(m, ExactMatrix::identity(q.quotient_dim(3).unwrap(), f));
    }

    #[test]
    fn inconsistent_map_degrees_are_rejected() {
        let f = Field::Rational;
        let c = parse("x0^2", 3, f);
        assert!(matches!(
            GradedMap::new(vec![0], 0, vec![c]),
            Err(Error::InconsistentDegrees(_))
        ));
        let q = GradedQuotient::new(3, f, vec![]).unwrap();
        let r1 = GradedMap::new(vec![0], -1, vec![parse("x0", 3, f)]).unwrap();
        let r2 = GradedMap::new(vec![1], -1, vec![parse("x0^2", 3, f)]).unwrap();
        assert!(graded_map_matrix(&q, &[r1, r2], 2).is_err());
    }

    #[test]
    fn degree_cap() {
        let q = GradedQuotient::new(2, Field::Rational, vec![]).unwrap();
        assert!(matches!(q.quotient_dim(13), Err(Error::ResourceCap(_))));
        assert_eq!(q.quotient_dim(12).unwrap(), 13);
        let big = GradedQuotient::new(9, Field::Prime(7), vec![]).unwrap();
        let x = HomogPoly::var(9, 0, Field::Prime(7));
        let row = GradedMap::new(vec![0], -1, vec![x]).unwrap();
        // R_5 -> R_6 in 9 variables is 3003 x 1287
        assert!(matches!(
            graded_map_matrix(&big, &[row], 5),
            Err(Error::ResourceCap(_))
        ));
    }
}
