use std::collections::BTreeMap;

use crate::algebra::{Field, HomogPoly};
use crate::error::{Error, Result};
use crate::graded::{graded_map_matrix, GradedMap, GradedQuotient};
use crate::linalg::ExactMatrix;

/// A complete-intersection curve `C = V(g_1..g_c)` in `P^n` together with
/// ambient equations written in terms of the generators,
/// `F_j = Σ_i a_{j,i} g_i`.
///
/// The coefficient matrix `[a_{j,i}]` restricted to `C` is the map
/// `⊕ O_C(deg g_i) -> ⊕ O_C(deg F_j)` whose kernel is the normal bundle of
/// `C` in `X = V(F_1..F_r)`.
pub struct CurveInAmbient {
    ring: GradedQuotient,
    ambient: Vec<HomogPoly>,
    relations: Vec<Vec<HomogPoly>>,
    curve_degree: i64,
    curve_genus: i64,
}

/// Sections and cohomology of `N_{C/X}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalBundleReport {
    pub h0_n: usize,
    pub h1_n: usize,
    pub chi_n: i64,
    /// Twist `k - a` with `K_C = O_C(k)`, `det N = O_C(a)`.
    pub dual_twist: i64,
    pub h0_n_twist: BTreeMap<i64, usize>,
}

impl NormalBundleReport {
    /// `h0 - h1 = chi`, with both sides computed independently.
    pub fn euler_ledger_holds(&self) -> bool {
        self.h0_n as i64 - self.h1_n as i64 == self.chi_n
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionCheck {
    pub quotient_dim: usize,
    pub riemann_roch: i64,
    pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank6Criterion {
    pub h0_n_minus1: usize,
    pub rank_q1: usize,
    /// `(h0 > 0) <=> (rank <= 5)`.
    pub equivalent: bool,
}

impl CurveInAmbient {
    /// Checks that `F_j = Σ a_{j,i} g_i` holds exactly, that degrees are
    /// consistent, that there are `n - 1` generators, and that the stated
    /// degree and genus match the complete-intersection values.
    pub fn new(
        generators: Vec<HomogPoly>,
        ambient: Vec<HomogPoly>,
        relations: Vec<Vec<HomogPoly>>,
        curve_degree: i64,
        curve_genus: i64,
    ) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidCurve("no generators".into()))?;
        let num_vars = first.num_vars();
        let field = first.field();
        if generators.len() + 2 != num_vars {
            return Err(Error::InvalidCurve(format!(
                "{} generators cannot cut a curve in P^{}",
                generators.len(),
                num_vars - 1
            )));
        }
        if let Some(g) = generators.iter().find(|g| g.is_zero() || g.degree() == 0) {
            return Err(Error::InvalidCurve(format!("degenerate generator {g}")));
        }
        if relations.len() != ambient.len() {
            return Err(Error::InvalidCurve(format!(
                "{} ambient equations but {} relation rows",
                ambient.len(),
                relations.len()
            )));
        }
        for (j, (f, row)) in ambient.iter().zip(&relations).enumerate() {
            if row.len() != generators.len() {
                return Err(Error::InvalidCurve(format!(
                    "relation row {j} has {} entries, expected {}",
                    row.len(),
                    generators.len()
                )));
            }
            let mut sum = HomogPoly::zero(num_vars, f.degree(), field);
            for (a, g) in row.iter().zip(&generators) {
                if !a.is_zero() && a.degree() + g.degree() != f.degree() {
                    return Err(Error::InconsistentDegrees(format!(
                        "relation {j}: deg {a} + deg {g} != {}",
                        f.degree()
                    )));
                }
                sum = sum.add(&a.mul(g)?)?;
            }
            if !sum.sub(f)?.is_zero() {
                return Err(Error::InvalidCurve(format!(
                    "ambient equation {j} is not Σ a_ji g_i"
                )));
            }
        }
        let expected_degree: i64 = generators.iter().map(|g| g.degree() as i64).product();
        if curve_degree != expected_degree {
            return Err(Error::InvalidCurve(format!(
                "stated degree {curve_degree}, complete intersection has degree {expected_degree}"
            )));
        }
        let k = generators.iter().map(|g| g.degree() as i64).sum::<i64>() - num_vars as i64;
        // adjunction: 2g - 2 = k * deg
        if 2 * curve_genus - 2 != k * curve_degree {
            return Err(Error::InvalidCurve(format!(
                "stated genus {curve_genus} contradicts adjunction (K_C = O_C({k}), degree {curve_degree})"
            )));
        }
        Ok(Self {
            ring: GradedQuotient::new(num_vars, field, generators)?,
            ambient,
            relations,
            curve_degree,
            curve_genus,
        })
    }

    pub fn ring(&self) -> &GradedQuotient {
        &self.ring
    }

    pub fn generators(&self) -> &[HomogPoly] {
        self.ring.generators()
    }

    pub fn ambient(&self) -> &[HomogPoly] {
        &self.ambient
    }

    pub fn relations(&self) -> &[Vec<HomogPoly>] {
        &self.relations
    }

    pub fn num_vars(&self) -> usize {
        self.ring.num_vars()
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn curve_degree(&self) -> i64 {
        self.curve_degree
    }

    pub fn curve_genus(&self) -> i64 {
        self.curve_genus
    }

    fn generator_degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.generators().iter().map(|g| g.degree() as i64)
    }

    fn ambient_degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.ambient.iter().map(|f| f.degree() as i64)
    }

    /// `k` with `K_C = O_C(k)`.
    pub fn canonical_twist(&self) -> i64 {
        self.generator_degrees().sum::<i64>() - self.num_vars() as i64
    }

    /// `a` with `det N_{C/X} = O_C(a)`.
    pub fn normal_det_twist(&self) -> i64 {
        self.generator_degrees().sum::<i64>() - self.ambient_degrees().sum::<i64>()
    }

    /// Index `i` of the ambient complete intersection, `K_X = O_X(-i)`.
    pub fn ambient_index(&self) -> i64 {
        self.num_vars() as i64 - self.ambient_degrees().sum::<i64>()
    }

    pub fn normal_rank(&self) -> i64 {
        self.generators().len() as i64 - self.ambient.len() as i64
    }

    /// Matrix of `⊕ (R/I_C)_{t + deg g_i} -> ⊕ (R/I_C)_{t + deg F_j}`.
    pub fn normal_map_matrix(&self, twist: i64) -> Result<ExactMatrix> {
        let sources: Vec<i64> = self.generator_degrees().map(|e| -e).collect();
        let rows = self
            .ambient
            .iter()
            .zip(&self.relations)
            .map(|(f, row)| GradedMap::new(sources.clone(), -(f.degree() as i64), row.clone()))
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(Error::InvalidCurve("no ambient equations".into()));
        }
        graded_map_matrix(&self.ring, &rows, twist)
    }

    /// `h^0(N_{C/X}(twist))` as the kernel dimension of the coefficient map
    /// in degree `twist`. Valid when `C` is projectively normal and `X` is
    /// smooth along `C`.
    pub fn normal_sections(&self, twist: i64) -> Result<usize> {
        let m = self.normal_map_matrix(twist)?;
        Ok(m.cols() - m.rank())
    }

    /// `h^0`, `h^1 = h^0(N(k - a))` by Serre duality for the rank-2 bundle,
    /// and `chi = a * deg C + 2(1 - g)` from Riemann–Roch.
    pub fn normal_cohomology(&self, extra_twists: &[i64]) -> Result<NormalBundleReport> {
        if self.normal_rank() != 2 {
            return Err(Error::Unsupported(format!(
                "normal bundle of rank {} (need a curve in a threefold)",
                self.normal_rank()
            )));
        }
        let a = self.normal_det_twist();
        let dual_twist = self.canonical_twist() - a;
        let h0_n = self.normal_sections(0)?;
        let h1_n = self.normal_sections(dual_twist)?;
        let chi_n = a * self.curve_degree + 2 * (1 - self.curve_genus);
        let mut h0_n_twist = BTreeMap::new();
        for &t in extra_twists {
            h0_n_twist.insert(t, self.normal_sections(t)?);
        }
        Ok(NormalBundleReport {
            h0_n,
            h1_n,
            chi_n,
            dual_twist,
            h0_n_twist,
        })
    }

    /// Riemann–Roch value of `h^0(O_C(j))` when it is determined by degree
    /// and genus alone.
    pub fn riemann_roch_h0(&self, j: i64) -> Result<i64> {
        let d = j * self.curve_degree;
        let g = self.curve_genus;
        if j == 0 {
            Ok(1)
        } else if j == self.canonical_twist() {
            Ok(g)
        } else if d > 2 * g - 2 {
            Ok(d + 1 - g)
        } else {
            Err(Error::Unsupported(format!(
                "h0(O_C({j})) is not fixed by Riemann-Roch (degree {d}, genus {g})"
            )))
        }
    }

    /// Whether `H^0(P^n, O(j)) -> H^0(C, O_C(j))` is onto, i.e.
    /// `dim (R/I_C)_j = h^0(O_C(j))`.
    pub fn restriction_surjective(&self, j: i64) -> Result<RestrictionCheck> {
        if j < 1 {
            return Err(Error::Unsupported(format!("restriction check needs j >= 1, got {j}")));
        }
        let riemann_roch = self.riemann_roch_h0(j)?;
        let quotient_dim = self.ring.quotient_dim(j)?;
        Ok(RestrictionCheck {
            quotient_dim,
            riemann_roch,
            surjective: quotient_dim as i64 == riemann_roch,
        })
    }

    /// Stability of the rank-2 bundle attached to `C` with `L = O_X(l)`:
    /// automatic for `l = 1`, and for `l = 2` equivalent to `C` spanning
    /// the ambient projective space.
    pub fn stability_check(&self, l_twist: i64) -> Result<bool> {
        match l_twist {
            1 => Ok(true),
            2 => Ok(self.ring.ideal_dim(1)? == 0),
            other => Err(Error::Unsupported(format!("stability for L = O({other})"))),
        }
    }

    /// For `C = V(x0, x1, x2, R, S)` in `P^6` inside three quadrics
    /// `Q_i = x0 L_i + x1 M_i + x2 N_i + a_i R + b_i S` with `a_1 = b_1 = 0`:
    /// compares `h^0(N_C(-1)) > 0` with `rank Q_1 <= 5`.
    pub fn rank6_criterion(&self) -> Result<Rank6Criterion> {
        self.check_rank6_shape()?;
        let h0_n_minus1 = self.normal_sections(-1)?;
        let gram = self.ambient[0].quadric_gram()?;
        let rank_q1 = ExactMatrix::from_rows(self.field(), gram)?.rank();
        Ok(Rank6Criterion {
            h0_n_minus1,
            rank_q1,
            equivalent: (h0_n_minus1 > 0) == (rank_q1 <= 5),
        })
    }

    fn check_rank6_shape(&self) -> Result<()> {
        let wrong = |why: &str| Err(Error::Unsupported(format!("not in rank-6 criterion shape: {why}")));
        let field = self.field();
        if self.num_vars() != 7 || self.ambient.len() != 3 {
            return wrong("need three quadrics in P^6");
        }
        let gens = self.generators();
        for (i, g) in gens.iter().take(3).enumerate() {
            if *g != HomogPoly::var(7, i, field) {
                return wrong("first three generators must be x0, x1, x2");
            }
        }
        if gens[3].degree() != 2 || gens[4].degree() != 2 {
            return wrong("last two generators must be quadrics");
        }
        if self.ambient.iter().any(|f| f.degree() != 2) {
            return wrong("ambient equations must be quadrics");
        }
        if !self.relations[0][3].is_zero() || !self.relations[0][4].is_zero() {
            return wrong("first relation must have a_1 = b_1 = 0");
        }
        Ok(())
    }
}
