//! Exact dense linear algebra over the rationals and prime fields.
//!
//! Over a prime field elimination runs on raw residues. Over the rationals
//! rows are cleared of denominators and reduced fraction-free (Bareiss), so
//! intermediate entries stay bounded by minors of the input.

mod backend;
mod bareiss;
mod rowspace;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};
use backend::{kernel_from_rref, rref, Backend, ModP, Rationals};

pub use rowspace::RowSpace;

/// Largest matrix (in entries) any graded computation may materialize.
pub const MAX_MATRIX_ENTRIES: usize = 100_000;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

/// Rank together with a kernel basis in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel: Vec<Vec<Scalar>>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, field: Field, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(Error::ContextMismatch(field.to_string(), bad.field().to_string()));
        }
        Ok(Self {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        Self {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn diagonal(diag: &[Scalar], field: Field) -> Result<Self> {
        let n = diag.len();
        let mut m = Self::zeros(n, n, field);
        for (i, d) in diag.iter().enumerate() {
            if d.field() != field {
                return Err(Error::ContextMismatch(field.to_string(), d.field().to_string()));
            }
            m.set(i, i, d.clone());
        }
        Ok(m)
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::LengthMismatch {
                expected: ncols,
                got: r.len(),
            });
        }
        Self::new(nrows, ncols, field, rows.into_iter().flatten().collect())
    }

    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        if self.field != other.field {
            return Err(Error::ContextMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    acc += &(self.get(i, k) * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Linear combination `Σ c_k M_k` of same-shaped matrices.
    pub fn combination(mats: &[&ExactMatrix], coeffs: &[Scalar]) -> Result<ExactMatrix> {
        let first = mats
            .first()
            .ok_or_else(|| Error::Unsupported("empty combination".into()))?;
        if coeffs.len() != mats.len() {
            return Err(Error::LengthMismatch {
                expected: mats.len(),
                got: coeffs.len(),
            });
        }
        let mut out = Self::zeros(first.rows, first.cols, first.field);
        for (m, c) in mats.iter().zip(coeffs) {
            if m.rows != first.rows || m.cols != first.cols || m.field != first.field {
                return Err(Error::Unsupported("combination of mismatched matrices".into()));
            }
            for (o, e) in out.entries.iter_mut().zip(&m.entries) {
                *o += &(c * e);
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Self::new(self.rows + other.rows, self.cols, self.field, entries)
    }

    fn lifted_rows<B: Backend>(&self, b: &B) -> Vec<Vec<B::E>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|s| b.lift(s)).collect())
            .collect()
    }

    fn integer_echelon(&self) -> bareiss::Echelon {
        let (ints, _) = bareiss::clear_denominators(&self.lifted_rows(&Rationals));
        bareiss::eliminate(ints, self.cols)
    }

    /// Rank and a kernel basis. Over the rationals the rank comes from
    /// fraction-free elimination; over a prime field from Gauss-Jordan.
    pub fn rank_kernel(&self) -> RankKernel {
        match self.field {
            Field::Prime(p) => {
                let b = ModP(p);
                let mut rows = self.lifted_rows(&b);
                let pivots = rref(&b, &mut rows, self.cols);
                let kernel = kernel_from_rref(&b, &rows, &pivots, self.cols)
                    .iter()
                    .map(|v| v.iter().map(|e| b.lower(e)).collect())
                    .collect();
                RankKernel {
                    rank: pivots.len(),
                    kernel,
                }
            }
            Field::Rational => {
                let e = self.integer_echelon();
                let kernel = bareiss::kernel(&e, self.cols)
                    .into_iter()
                    .map(|v| v.into_iter().map(Scalar::Rational).collect())
                    .collect();
                RankKernel {
                    rank: e.pivots.len(),
                    kernel,
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        match self.field {
            Field::Prime(p) => {
                let b = ModP(p);
                let mut rows = self.lifted_rows(&b);
                rref(&b, &mut rows, self.cols).len()
            }
            Field::Rational => self.integer_echelon().pivots.len(),
        }
    }

    /// `cols - rank`; for a symmetric matrix this is the corank of the quadric.
    pub fn corank(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Unsupported(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(match self.field {
            Field::Prime(p) => Scalar::Mod {
                value: det_mod_p(self.lifted_rows(&ModP(p)), p),
                modulus: p,
            },
            Field::Rational => {
                let (ints, scales) = bareiss::clear_denominators(&self.lifted_rows(&Rationals));
                let det = bareiss::determinant(ints);
                let scale: BigInt = scales.iter().product();
                Scalar::Rational(BigRational::new(det, scale))
            }
        })
    }

    /// Some `x` with `M x = b`, or `None` if the system is inconsistent. The
    /// returned solution has zeros at every free column.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if rhs.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                got: rhs.len(),
            });
        }
        // kernel of [M | -b] with last coordinate 1
        let mut entries = Vec::with_capacity(self.rows * (self.cols + 1));
        for (i, b) in rhs.iter().enumerate() {
            entries.extend(self.row(i).iter().cloned());
            entries.push(-b);
        }
        let aug = Self::new(self.rows, self.cols + 1, self.field, entries)?;
        let rk = aug.rank_kernel();
        Ok(rk
            .kernel
            .into_iter()
            .find(|v| v[self.cols].is_one())
            .map(|mut v| {
                v.truncate(self.cols);
                v
            }))
    }
}

fn det_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let b = ModP(p);
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| m[i][c] != 0) else {
            return 0;
        };
        if piv != c {
            m.swap(piv, c);
            det = b.neg(&det);
        }
        det = det * m[c][c] % p;
        let inv = b.inv(&m[c][c]);
        for i in c + 1..n {
            if m[i][c] == 0 {
                continue;
            }
            let f = m[i][c] * inv % p;
            for j in c..n {
                m[i][j] = b.sub_mul(&m[i][j], &f, &m[c][j]);
            }
        }
    }
    det
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_zero() {
        for field in [Field::Rational, Field::Prime(7)] {
            let id = ExactMatrix::identity(5, field).rank_kernel();
            assert_eq!(id.rank, 5);
            assert!(id.kernel.is_empty());
            let z = ExactMatrix::zeros(3, 7, field).rank_kernel();
            assert_eq!(z.rank, 0);
            assert_eq!(z.kernel.len(), 7);
        }
    }

    #[test]
    fn coranks_of_diagonal_quadrics() {
        let q = Field::Rational;
        let d = |v: &[i64]| {
            ExactMatrix::diagonal(&v.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>(), q)
                .unwrap()
        };
        assert_eq!(d(&[1, 1, 1, 1, 1, 0]).corank(), 1);
        assert_eq!(ExactMatrix::identity(7, q).corank(), 0);
        assert_eq!(d(&[1, 1, 1, 1, 1, 0, 0]).corank(), 2);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let q = Field::Rational;
        let m = ExactMatrix::from_i64(q, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![1, 0, 1, 0]])
            .unwrap();
        let rk = m.rank_kernel();
        assert_eq!(rk.rank, 2);
        for v in &rk.kernel {
            assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn determinants_agree_across_fields() {
        let rows = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        let q = ExactMatrix::from_i64(Field::Rational, &rows).unwrap();
        assert_eq!(q.determinant().unwrap(), Field::Rational.from_i64(4));
        let p = ExactMatrix::from_i64(Field::Prime(7), &rows).unwrap();
        assert_eq!(p.determinant().unwrap().residue(), Some(4));
    }

    #[test]
    fn rational_determinant_with_denominators() {
        let q = Field::Rational;
        let half = q.from_ratio(&1.into(), &2.into()).unwrap();
        let m = ExactMatrix::from_rows(
            q,
            vec![vec![half.clone(), q.zero()], vec![q.one(), half.clone()]],
        )
        .unwrap();
        assert_eq!(m.determinant().unwrap(), q.from_ratio(&1.into(), &4.into()).unwrap());
    }

    #[test]
    fn solve_square_and_inconsistent() {
        let q = Field::Rational;
        let m = ExactMatrix::from_i64(q, &[vec![2, 1], vec![1, 3]]).unwrap();
        let x = m.solve(&[q.from_i64(3), q.from_i64(4)]).unwrap().unwrap();
        assert_eq!(x, vec![q.one(), q.one()]);
        let sing = ExactMatrix::from_i64(q, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(sing.solve(&[q.one(), q.zero()]).unwrap().is_none());
    }
}
