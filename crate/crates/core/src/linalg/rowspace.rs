use super::backend::{Backend, ModP, Rationals};
use crate::algebra::{Field, Scalar};

/// Incrementally built row space, kept fully reduced: every basis row has a
/// leading 1 at its pivot column and zeros at every other pivot column.
pub struct RowSpace {
    field: Field,
    cols: usize,
    inner: Inner,
}

enum Inner {
    Mod(Space<ModP>),
    Rat(Space<Rationals>),
}

struct Space<B: Backend> {
    b: B,
    rows: Vec<Vec<B::E>>,
    pivots: Vec<usize>,
}

impl<B: Backend> Space<B> {
    fn reduce(&self, v: &mut [B::E]) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if self.b.is_zero(&v[pc]) {
                continue;
            }
            let f = v[pc].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !self.b.is_zero(r) {
                    *x = self.b.sub_mul(x, &f, r);
                }
            }
        }
    }

    fn insert(&mut self, mut v: Vec<B::E>) -> bool {
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|x| !self.b.is_zero(x)) else {
            return false;
        };
        let inv = self.b.inv(&v[c]);
        for x in v.iter_mut() {
            *x = self.b.mul(x, &inv);
        }
        for row in &mut self.rows {
            if self.b.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !self.b.is_zero(r) {
                    *x = self.b.sub_mul(x, &f, r);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(c);
        true
    }
}

impl RowSpace {
    pub fn new(field: Field, cols: usize) -> Self {
        let inner = match field {
            Field::Prime(p) => Inner::Mod(Space {
                b: ModP(p),
                rows: Vec::new(),
                pivots: Vec::new(),
            }),
            Field::Rational => Inner::Rat(Space {
                b: Rationals,
                rows: Vec::new(),
                pivots: Vec::new(),
            }),
        };
        Self { field, cols, inner }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots().len()
    }

    /// Pivot columns in insertion order.
    pub fn pivots(&self) -> &[usize] {
        match &self.inner {
            Inner::Mod(s) => &s.pivots,
            Inner::Rat(s) => &s.pivots,
        }
    }

    /// Adds a row; returns whether it enlarged the space.
    pub fn insert(&mut self, row: &[Scalar]) -> bool {
        assert_eq!(row.len(), self.cols, "row length");
        match &mut self.inner {
            Inner::Mod(s) => {
                let v = row.iter().map(|x| s.b.lift(x)).collect();
                s.insert(v)
            }
            Inner::Rat(s) => {
                let v = row.iter().map(|x| s.b.lift(x)).collect();
                s.insert(v)
            }
        }
    }

    /// Adds a sparse row given as `(column, value)` pairs.
    pub fn insert_sparse<'a>(&mut self, entries: impl IntoIterator<Item = (usize, &'a Scalar)>) -> bool {
        let mut row = vec![self.field.zero(); self.cols];
        for (c, v) in entries {
            row[c] += v;
        }
        self.insert(&row)
    }

    /// Normal form of `v` modulo the space: zero at every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        match &self.inner {
            Inner::Mod(s) => {
                let mut w: Vec<_> = v.iter().map(|x| s.b.lift(x)).collect();
                s.reduce(&mut w);
                w.iter().map(|x| s.b.lower(x)).collect()
            }
            Inner::Rat(s) => {
                let mut w: Vec<_> = v.iter().map(|x| s.b.lift(x)).collect();
                s.reduce(&mut w);
                w.iter().map(|x| s.b.lower(x)).collect()
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }
}
