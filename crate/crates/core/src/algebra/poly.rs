use std::collections::BTreeMap;
use std::fmt;

use super::monomial::Monomial;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Sparse homogeneous polynomial over one scalar context.
///
/// Stored coefficients are never zero and every stored monomial has the
/// declared degree. The zero polynomial keeps a declared degree too, so that
/// products and graded maps stay well typed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogPoly {
    num_vars: usize,
    degree: u32,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl HomogPoly {
    pub fn zero(num_vars: usize, degree: u32, field: Field) -> Self {
        Self {
            num_vars,
            degree,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Scalar) -> Self {
        let field = c.field();
        Self::from_terms(num_vars, 0, field, [(Monomial::one(num_vars), c)])
            .expect("constant is homogeneous")
    }

    pub fn var(num_vars: usize, i: usize, field: Field) -> Self {
        Self::term(Monomial::var(num_vars, i), field.one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(m.num_vars(), m.degree(), c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms, summing repeated monomials.
    pub fn from_terms(
        num_vars: usize,
        degree: u32,
        field: Field,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut p = Self::zero(num_vars, degree, field);
        for (m, c) in terms {
            if m.num_vars() != num_vars {
                return Err(Error::VariableMismatch {
                    expected: num_vars,
                    got: m.num_vars(),
                });
            }
            if c.field() != field {
                return Err(Error::ContextMismatch(field.to_string(), c.field().to_string()));
            }
            if m.degree() != degree {
                return Err(Error::InconsistentDegrees(format!(
                    "monomial {m} has degree {}, polynomial declared degree {degree}",
                    m.degree()
                )));
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Re-declares the degree of a zero polynomial; nonzero inputs must
    /// already have that degree.
    pub fn with_degree(mut self, degree: u32) -> Result<Self> {
        if !self.is_zero() && self.degree != degree {
            return Err(Error::InconsistentDegrees(format!(
                "cannot re-declare a nonzero degree-{} form as degree {degree}",
                self.degree
            )));
        }
        self.degree = degree;
        Ok(self)
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &HomogPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ContextMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        if self.num_vars != other.num_vars {
            return Err(Error::VariableMismatch {
                expected: self.num_vars,
                got: other.num_vars,
            });
        }
        Ok(())
    }

    /// Sum of two forms of the same degree. A zero operand adopts the degree
    /// of the other.
    pub fn add(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.check_compatible(other)?;
        if self.is_zero() {
            return Ok(if other.is_zero() { self.clone() } else { other.clone() });
        }
        if !other.is_zero() && self.degree != other.degree {
            return Err(Error::InconsistentDegrees(format!(
                "cannot add forms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomogPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Result<HomogPoly> {
        if s.field() != self.field {
            return Err(Error::ContextMismatch(self.field.to_string(), s.field().to_string()));
        }
        let mut out = Self::zero(self.num_vars, self.degree, self.field);
        if s.is_zero() {
            return Ok(out);
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * s);
        }
        Ok(out)
    }

    /// Exact product; the result has degree `deg f + deg g` even when zero.
    pub fn mul(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.num_vars, self.degree + other.degree, self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> HomogPoly {
        let mut out = Self::zero(self.num_vars, self.degree + m.degree(), self.field);
        for (mm, c) in &self.terms {
            out.terms.insert(mm.mul(m), c.clone());
        }
        out
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.num_vars {
            return Err(Error::LengthMismatch {
                expected: self.num_vars,
                got: point.len(),
            });
        }
        if let Some(bad) = point.iter().find(|s| s.field() != self.field) {
            return Err(Error::ContextMismatch(self.field.to_string(), bad.field().to_string()));
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Symmetric Gram matrix entries of a quadratic form: `a_ii` is the
    /// coefficient of `x_i^2`, `a_ij` half the coefficient of `x_i x_j`.
    pub fn quadric_gram(&self) -> Result<Vec<Vec<Scalar>>> {
        if self.degree != 2 {
            return Err(Error::InconsistentDegrees(format!(
                "expected a quadric, got degree {}",
                self.degree
            )));
        }
        let n = self.num_vars;
        let half = self.field.from_i64(2).inv()?;
        let mut gram = vec![vec![self.field.zero(); n]; n];
        for (m, c) in &self.terms {
            let idx: Vec<usize> = m
                .exponents()
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
                .collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                gram[i][i] = c.clone();
            } else {
                let h = c * &half;
                gram[i][j] = h.clone();
                gram[j][i] = h;
            }
        }
        Ok(gram)
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, f: Field) -> HomogPoly {
        HomogPoly::var(5, i, f)
    }

    #[test]
    fn square_of_sum() {
        let q = Field::Rational;
        let s = x(0, q).add(&x(1, q)).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.to_string(), "x0^2 + 2*x0*x1 + x1^2");
        assert_eq!(sq.degree(), 2);
    }

    #[test]
    fn product_with_zero_keeps_degree() {
        let q = Field::Rational;
        let z = HomogPoly::zero(5, 3, q);
        let p = x(0, q).mul(&z).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.degree(), 4);
    }

    #[test]
    fn witness_times_variable() {
        let q = Field::Rational;
        let q5 = x(0, q).mul(&x(1, q)).unwrap().add(&x(2, q).mul(&x(3, q)).unwrap()).unwrap();
        let p = q5.mul(&x(4, q)).unwrap();
        assert_eq!(p.to_string(), "x0*x1*x4 + x2*x3*x4");
    }

    #[test]
    fn mixed_contexts_are_errors() {
        let a = x(0, Field::Rational);
        let b = x(0, Field::Prime(7));
        assert!(matches!(a.mul(&b), Err(Error::ContextMismatch(..))));
        assert!(matches!(a.add(&b), Err(Error::ContextMismatch(..))));
    }

    #[test]
    fn evaluation() {
        let q = Field::Rational;
        let sq = x(0, q).mul(&x(0, q)).unwrap();
        let pt: Vec<Scalar> = [3, 0, 0, 0, 0].iter().map(|&v| q.from_i64(v)).collect();
        assert_eq!(sq.evaluate(&pt).unwrap(), q.from_i64(9));
        let zero_pt = vec![q.zero(); 5];
        assert!(sq.evaluate(&zero_pt).unwrap().is_zero());
        assert!(matches!(sq.evaluate(&pt[..3]), Err(Error::LengthMismatch { .. })));

        let v = |i| HomogPoly::var(4, i, q);
        let f = v(0).mul(&v(1)).unwrap().add(&v(2).mul(&v(3)).unwrap()).unwrap();
        let pt: Vec<Scalar> = [1, 1, 1, -1].iter().map(|&v| q.from_i64(v)).collect();
        assert!(f.evaluate(&pt).unwrap().is_zero());
    }

    #[test]
    fn gram_matrix_halves_cross_terms() {
        let q = Field::Rational;
        let f = x(0, q).mul(&x(1, q)).unwrap();
        let g = f.quadric_gram().unwrap();
        let half = q.from_ratio(&1.into(), &2.into()).unwrap();
        assert_eq!(g[0][1], half);
        assert_eq!(g[1][0], half);
        assert!(g[0][0].is_zero());
    }
}
