use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;

/// Reduced finite subscheme of `P^n`: pairwise distinct projective points.
#[derive(Clone, Debug)]
pub struct PointScheme {
    num_vars: usize,
    field: Field,
    points: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyBacharach {
    /// No three of the points are collinear.
    pub cb: bool,
    /// `h^0(I_Z(1))`.
    pub h0_iz1: usize,
    /// `h^1(I_Z(1))` on the (2,3) K3 surface, from
    /// `0 -> I_Z(1) -> O_S(1) -> O_Z(1) -> 0` with `h^0(O_S(1)) = 5`.
    pub h1_iz1_on_s: i64,
    /// Whether the points lie in a 2-plane, when requested.
    pub in_plane: Option<bool>,
}

impl PointScheme {
    pub fn new(points: Vec<Vec<Scalar>>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::InvalidPoints("no points".into()))?;
        let num_vars = first.len();
        let field = first
            .first()
            .ok_or_else(|| Error::InvalidPoints("zero-length coordinates".into()))?
            .field();
        for p in &points {
            if p.len() != num_vars {
                return Err(Error::LengthMismatch {
                    expected: num_vars,
                    got: p.len(),
                });
            }
            if let Some(bad) = p.iter().find(|s| s.field() != field) {
                return Err(Error::ContextMismatch(field.to_string(), bad.field().to_string()));
            }
            if p.iter().all(Scalar::is_zero) {
                return Err(Error::InvalidPoints("the zero vector is not a point".into()));
            }
        }
        let scheme = Self {
            num_vars,
            field,
            points,
        };
        for i in 0..scheme.points.len() {
            for j in 0..i {
                if scheme.span_rank(&[i, j]) < 2 {
                    return Err(Error::InvalidPoints(format!("points {j} and {i} coincide")));
                }
            }
        }
        Ok(scheme)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    /// Rank of the coordinate matrix of the chosen points.
    pub fn span_rank(&self, which: &[usize]) -> usize {
        let rows = which.iter().map(|&i| self.points[i].clone()).collect();
        ExactMatrix::from_rows(self.field, rows)
            .expect("rows share length and field")
            .rank()
    }

    /// `h^0(I_Z(1))`: linear forms vanishing at every point, i.e. the kernel
    /// of the evaluation matrix.
    pub fn h0_ideal_linear(&self) -> usize {
        self.num_vars - self.span_rank(&(0..self.len()).collect::<Vec<_>>())
    }

    /// True when some three of the points lie on a line.
    pub fn has_collinear_triple(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if self.span_rank(&[a, b, c]) < 3 {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Cayley–Bacharach and extension-space numerics for a length-4 reduced
/// subscheme of the (2,3) K3 surface in `P^4`.
pub fn cayley_bacharach(z: &PointScheme, plane_dim_check: bool) -> Result<CayleyBacharach> {
    if z.len() != 4 {
        return Err(Error::InvalidPoints(format!("need 4 points, got {}", z.len())));
    }
    if z.num_vars() != 5 {
        return Err(Error::InvalidPoints(format!(
            "points must lie in P^4, got P^{}",
            z.num_vars() - 1
        )));
    }
    let span = z.span_rank(&[0, 1, 2, 3]);
    let h0_iz1 = z.num_vars() - span;
    Ok(CayleyBacharach {
        cb: !z.has_collinear_triple(),
        h0_iz1,
        h1_iz1_on_s: 4 - (5 - h0_iz1 as i64),
        in_plane: plane_dim_check.then_some(span <= 3),
    })
}
