//! Seeded random instances, built curve first so that `C ⊂ X` holds by
//! construction. Degenerate draws are redrawn with a fresh derived seed.

use fano_core::geometry::{CurveInAmbient, PointScheme, QuadricNet};
use fano_core::graded::koszul_hilbert;
use fano_core::random;
use fano_core::rng::{derive_seed, SplitMix64};
use fano_core::{Error, ExactMatrix, Field, HomogPoly, Result, Scalar};

use crate::scenario::{PointConfig, QuarticVariant};

/// Redraws allowed per trial before the trial is reported as an error.
pub const MAX_RESAMPLES: u32 = 100;

#[derive(Debug)]
pub struct Draw<T> {
    pub value: T,
    pub resamples: u32,
}

#[derive(Debug)]
pub enum DrawError {
    Exhausted(String),
    Math(Error),
}

impl From<Error> for DrawError {
    fn from(e: Error) -> Self {
        DrawError::Math(e)
    }
}

/// Runs `attempt` on draws `0, 1, ...` until it returns `Some`.
pub fn resample<T>(
    seed: u64,
    what: &str,
    mut attempt: impl FnMut(&mut SplitMix64) -> Result<Option<T>>,
) -> std::result::Result<Draw<T>, DrawError> {
    for draw in 0..=MAX_RESAMPLES {
        let mut rng = SplitMix64::new(derive_seed(seed, draw as u64));
        if let Some(value) = attempt(&mut rng)? {
            return Ok(Draw { value, resamples: draw });
        }
    }
    Err(DrawError::Exhausted(format!(
        "{what}: {MAX_RESAMPLES} resamples without a non-degenerate draw"
    )))
}

fn combine(row: &[HomogPoly], gens: &[HomogPoly]) -> Result<HomogPoly> {
    let mut acc = row[0].mul(&gens[0])?;
    for (a, g) in row.iter().zip(gens).skip(1) {
        acc = acc.add(&a.mul(g)?)?;
    }
    Ok(acc)
}

fn build(gens: Vec<HomogPoly>, relations: Vec<Vec<HomogPoly>>, degree: i64, genus: i64) -> Result<CurveInAmbient> {
    let ambient = relations.iter().map(|r| combine(r, &gens)).collect::<Result<Vec<_>>>()?;
    CurveInAmbient::new(gens, ambient, relations, degree, genus)
}

/// The generated ideal has the Hilbert function of a complete intersection
/// up to degree `t_max`, i.e. the generators form a regular sequence there.
fn is_complete_intersection(c: &CurveInAmbient, t_max: i64) -> Result<bool> {
    let degrees: Vec<u32> = c.generators().iter().map(HomogPoly::degree).collect();
    for t in 0..=t_max {
        if c.ring().quotient_dim(t)? as u64 != koszul_hilbert(&degrees, c.num_vars(), t) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn ambient_independent(c: &CurveInAmbient) -> Result<bool> {
    let forms = c.ambient();
    if forms.iter().any(HomogPoly::is_zero) {
        return Ok(false);
    }
    let degree = forms[0].degree();
    if forms.iter().any(|f| f.degree() != degree) {
        return Ok(true);
    }
    let basis = fano_core::monomial_basis(c.num_vars(), degree);
    let rows = forms
        .iter()
        .map(|f| basis.iter().map(|m| f.coefficient(m)).collect())
        .collect();
    Ok(ExactMatrix::from_rows(c.field(), rows)?.rank() == forms.len())
}

/// `C = V(l1, l2, q)` in `P^4` on the cubic `a1 l1 + a2 l2 + a3 q`.
pub fn conic_on_cubic(field: Field, seed: u64) -> std::result::Result<Draw<CurveInAmbient>, DrawError> {
    resample(seed, "conic on a cubic", |rng| {
        let mut f = |d| random::form(5, d, field, rng);
        let gens = vec![f(1), f(1), f(2)];
        let row = vec![f(2), f(2), f(1)];
        let c = match build(gens, vec![row], 2, 0) {
            Ok(c) => c,
            Err(Error::InvalidCurve(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        Ok((is_complete_intersection(&c, 3)? && ambient_independent(&c)?).then_some(c))
    })
}

/// `C = V(x0, x1, x2, R, S)` in `P^6` on the three quadrics
/// `Q_i = x0 L_i + x1 M_i + x2 N_i + a_i R + b_i S` with `a_1 = b_1 = 0`.
pub fn elliptic_quartic(
    field: Field,
    seed: u64,
    variant: QuarticVariant,
) -> std::result::Result<Draw<CurveInAmbient>, DrawError> {
    resample(seed, "elliptic quartic", |rng| {
        let x = |i| HomogPoly::var(7, i, field);
        let gens = vec![
            x(0),
            x(1),
            x(2),
            random::form(7, 2, field, rng),
            random::form(7, 2, field, rng),
        ];
        let mut relations = Vec::with_capacity(3);
        for i in 0..3 {
            let mut row: Vec<HomogPoly> = (0..3).map(|_| random::form(7, 1, field, rng)).collect();
            for _ in 0..2 {
                let a = if i == 0 { field.zero() } else { random::scalar(field, rng) };
                row.push(HomogPoly::constant(7, a));
            }
            relations.push(row);
        }
        match variant {
            QuarticVariant::Generic => {}
            QuarticVariant::Engineered => relations[0][0] = x(0),
            QuarticVariant::Degenerate => {
                for entry in relations[0].iter_mut().take(3) {
                    *entry = HomogPoly::zero(7, 1, field);
                }
            }
        }
        let c = build(gens, relations, 4, 1)?;
        let ambient_ok = match variant {
            QuarticVariant::Degenerate => !c.ambient()[1].is_zero() && !c.ambient()[2].is_zero(),
            _ => ambient_independent(&c)?,
        };
        Ok((ambient_ok && is_complete_intersection(&c, 3)?).then_some(c))
    })
}

/// `C = V(q0, q1, q2)` in `P^4` on the quartic `q0 q3 + q1 q4 + q2 q5`.
pub fn canonical_in_quartic(qs: [HomogPoly; 6]) -> Result<CurveInAmbient> {
    let [q0, q1, q2, q3, q4, q5] = qs;
    build(vec![q0, q1, q2], vec![vec![q3, q4, q5]], 8, 5)
}

pub fn canonical_curve(field: Field, seed: u64) -> std::result::Result<Draw<CurveInAmbient>, DrawError> {
    resample(seed, "canonical curve", |rng| {
        let c = canonical_in_quartic(std::array::from_fn(|_| random::form(5, 2, field, rng)))?;
        Ok((is_complete_intersection(&c, 3)? && ambient_independent(&c)?).then_some(c))
    })
}

/// `q_i = x_i^2` for `i < 5` and `q_5 = x0 x1 + x2 x3`.
pub fn witness_quadrics(field: Field) -> [HomogPoly; 6] {
    ["x0^2", "x1^2", "x2^2", "x3^2", "x4^2", "x0*x1 + x2*x3"]
        .map(|s| HomogPoly::parse(s, 5, field).expect("fixed witness parses"))
}

fn combination(coeffs: &[Scalar], vectors: &[Vec<Scalar>], field: Field) -> Vec<Scalar> {
    let n = vectors[0].len();
    (0..n)
        .map(|k| {
            coeffs
                .iter()
                .zip(vectors)
                .fold(field.zero(), |acc, (c, v)| &acc + &(c * &v[k]))
        })
        .collect()
}

/// Four points of `P^4` in the requested configuration.
pub fn point_scheme(field: Field, seed: u64, config: PointConfig) -> std::result::Result<Draw<PointScheme>, DrawError> {
    resample(seed, "point scheme", |rng| {
        let mut v = || random::vector(5, field, rng);
        let pts = match config {
            PointConfig::Coplanar => {
                let span = [v(), v(), v()];
                let ones = [field.one(), field.one(), field.one()];
                let mut pts: Vec<Vec<Scalar>> = span.to_vec();
                pts.push(combination(&ones, &span, field));
                pts
            }
            PointConfig::Collinear => {
                let (a, b, d) = (v(), v(), v());
                let c = combination(&[field.one(), field.one()], &[a.clone(), b.clone()], field);
                vec![a, b, c, d]
            }
            PointConfig::Spanning => vec![v(), v(), v(), v()],
        };
        let z = match PointScheme::new(pts) {
            Ok(z) => z,
            Err(Error::InvalidPoints(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let span = z.span_rank(&[0, 1, 2, 3]);
        let ok = match config {
            PointConfig::Coplanar => span == 3 && !z.has_collinear_triple(),
            // exactly one collinear triple: the fourth point is off the line
            PointConfig::Collinear => z.span_rank(&[0, 1, 3]) == 3,
            PointConfig::Spanning => span == 4,
        };
        Ok(ok.then_some(z))
    })
}

/// Net of `m x m` symmetric matrices; the engineered net has
/// `A = diag(1, ..., 1, 0, 0)`.
pub fn quadric_net(field: Field, seed: u64, m: usize, engineered: bool) -> std::result::Result<Draw<QuadricNet>, DrawError> {
    resample(seed, "net of quadrics", |rng| {
        let a = if engineered {
            let d: Vec<Scalar> = (0..m).map(|i| if i + 2 < m { field.one() } else { field.zero() }).collect();
            ExactMatrix::diagonal(&d, field)?
        } else {
            random::symmetric_matrix(m, field, rng)
        };
        let b = random::symmetric_matrix(m, field, rng);
        let c = random::symmetric_matrix(m, field, rng);
        let net = QuadricNet::new(a, b, c)?;
        // a generic member must be smooth
        let probe: [Scalar; 3] = std::array::from_fn(|_| random::scalar(field, rng));
        Ok((!net.discriminant_value(&probe)?.is_zero()).then_some(net))
    })
}
