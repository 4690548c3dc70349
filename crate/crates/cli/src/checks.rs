//! One trial of each check: build the instance, compute, report integers.

use std::collections::BTreeMap;

use fano_core::chern::{chi_end, lagrangian_ledger, moduli_dim_eq1};
use fano_core::geometry::{cayley_bacharach, discriminant_form, discriminant_rank_scan, CurveInAmbient};
use fano_core::graded::{graded_map_matrix, koszul_hilbert, GradedMap, GradedQuotient};
use fano_core::rng::SplitMix64;
use fano_core::{random, Error, ExactMatrix, Field};

use crate::catalog::Catalog;
use crate::instances::{self, Draw, DrawError};
use crate::scenario::{CheckParams, CurveKind, FamilyParams, OracleParams, QuarticVariant};

pub type Values = BTreeMap<String, i64>;

/// Outcome of a trial that ran to completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computed {
    pub values: Values,
    pub resamples: u32,
    /// Set when a sampling budget ran out before the requested count.
    pub insufficient: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialErrorKind {
    ResourceCap,
    InsufficientSamples,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialError {
    pub kind: TrialErrorKind,
    pub message: String,
}

impl From<Error> for TrialError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::ResourceCap(_) => TrialErrorKind::ResourceCap,
            Error::InsufficientSamples { .. } => TrialErrorKind::InsufficientSamples,
            _ => TrialErrorKind::Error,
        };
        TrialError {
            kind,
            message: e.to_string(),
        }
    }
}

impl From<DrawError> for TrialError {
    fn from(e: DrawError) -> Self {
        match e {
            DrawError::Math(e) => e.into(),
            DrawError::Exhausted(message) => TrialError {
                kind: TrialErrorKind::Error,
                message,
            },
        }
    }
}

struct Acc {
    values: Values,
    resamples: u32,
}

impl Acc {
    fn new() -> Self {
        Self {
            values: Values::new(),
            resamples: 0,
        }
    }

    fn set(&mut self, key: &str, v: impl TryInto<i64>) {
        let v = v.try_into().unwrap_or(i64::MAX);
        self.values.insert(key.to_string(), v);
    }

    fn flag(&mut self, key: &str, b: bool) {
        self.set(key, b as i64);
    }

    fn take<T>(&mut self, d: Draw<T>) -> T {
        self.resamples += d.resamples;
        d.value
    }

    fn done(self) -> Computed {
        Computed {
            values: self.values,
            resamples: self.resamples,
            insufficient: None,
        }
    }
}

fn normal_bundle(acc: &mut Acc, c: &CurveInAmbient) -> Result<(), TrialError> {
    let r = c.normal_cohomology(&[])?;
    acc.set("h0_N", r.h0_n);
    acc.set("h1_N", r.h1_n);
    acc.set("chi_N", r.chi_n);
    acc.flag("euler_ledger", r.euler_ledger_holds());
    Ok(())
}

fn random_curve(kind: CurveKind, field: Field, seed: u64) -> Result<Draw<CurveInAmbient>, DrawError> {
    match kind {
        CurveKind::Conic => instances::conic_on_cubic(field, seed),
        CurveKind::EllipticQuartic => instances::elliptic_quartic(field, seed, QuarticVariant::Generic),
        CurveKind::Canonical => instances::canonical_curve(field, seed),
    }
}

/// Runs one trial with its derived seed.
pub fn run_trial(params: &CheckParams, field: Field, seed: u64, catalog: &Catalog) -> Result<Computed, TrialError> {
    let mut acc = Acc::new();
    match params {
        CheckParams::ConicOnCubic => {
            let c = acc.take(instances::conic_on_cubic(field, seed)?);
            normal_bundle(&mut acc, &c)?;
        }
        CheckParams::EllipticQuartic222(p) => {
            let c = acc.take(instances::elliptic_quartic(field, seed, p.variant)?);
            if p.variant == QuarticVariant::Generic {
                normal_bundle(&mut acc, &c)?;
            }
            let r = c.rank6_criterion()?;
            acc.set("h0_N_minus1", r.h0_n_minus1);
            acc.set("rank_Q1", r.rank_q1);
            acc.flag("equivalent", r.equivalent);
            acc.flag("h0_positive", r.h0_n_minus1 > 0);
            acc.flag("rank_at_most_5", r.rank_q1 <= 5);
        }
        CheckParams::CanonicalG3Quartic => {
            let c = acc.take(instances::canonical_curve(field, seed)?);
            normal_bundle(&mut acc, &c)?;
            acc.set("h0_N_minus1", c.normal_sections(-1)?);
            acc.flag("restriction_surjective", c.restriction_surjective(1)?.surjective);
            acc.flag("stable_L2", c.stability_check(2)?);
        }
        CheckParams::G3Witness => {
            let qs = instances::witness_quadrics(field);
            let ring = GradedQuotient::new(5, field, Vec::new())?;
            let row = GradedMap::new(vec![2; 6], 0, qs.to_vec())?;
            let deg4 = graded_map_matrix(&ring, std::slice::from_ref(&row), 4)?;
            let rank4 = deg4.rank();
            acc.set("rank_deg4", rank4);
            acc.set("coker_deg4", deg4.rows() - rank4);
            let deg3 = graded_map_matrix(&ring, &[row], 3)?;
            acc.set("syzygy_deg1_kernel", deg3.cols() - deg3.rank());
            let curve = instances::canonical_in_quartic(qs)?;
            acc.set("h0_N_minus1", curve.normal_sections(-1)?);
        }
        CheckParams::DiscriminantNet(p) => {
            let net = acc.take(instances::quadric_net(field, seed, p.m, p.engineered)?);
            let d = discriminant_form(&net)?;
            acc.set("degree", if d.is_zero() { -1 } else { d.degree() as i64 });
            let scan = discriminant_rank_scan(&net, p.points, seed)?;
            acc.set("points_found", scan.points_found);
            acc.set("lines_used", scan.lines_used);
            for (corank, count) in &scan.histogram {
                acc.set(&format!("corank_{corank}"), *count);
            }
            acc.set("max_corank", scan.max_corank());
            acc.flag("all_corank1", scan.all_corank(1));
            acc.flag("planted_detected", scan.max_corank() >= 2);
            acc.flag("sufficient", scan.sufficient());
            let mut out = acc.done();
            if !scan.sufficient() {
                out.insufficient = Some(format!(
                    "found {} of {} discriminant points in {} lines",
                    scan.points_found, scan.target, scan.lines_used
                ));
            }
            return Ok(out);
        }
        CheckParams::CayleyBacharach(p) => {
            let z = acc.take(instances::point_scheme(field, seed, p.config)?);
            let r = cayley_bacharach(&z, true)?;
            acc.flag("cb", r.cb);
            acc.set("h0_IZ1", r.h0_iz1);
            acc.set("h1_IZ1_on_S", r.h1_iz1_on_s);
            acc.flag("in_plane", r.in_plane.unwrap_or(false));
            acc.flag("ledger", r.h0_iz1 + z.span_rank(&[0, 1, 2, 3]) == 5);
        }
        CheckParams::Stability(p) => {
            let c = acc.take(random_curve(p.curve, field, seed)?);
            acc.flag("stable", c.stability_check(p.l_twist)?);
            acc.set("ideal_dim_1", c.ring().ideal_dim(1)?);
        }
        CheckParams::RestrictionSurjectivity(p) => {
            let c = acc.take(random_curve(p.curve, field, seed)?);
            let r = c.restriction_surjective(p.j)?;
            acc.set("quotient_dim", r.quotient_dim);
            acc.set("riemann_roch", r.riemann_roch);
            acc.flag("surjective", r.surjective);
        }
        CheckParams::Eq1Table(p) => {
            for f in selected_families(p, catalog)? {
                let fam = f.family().map_err(|e| TrialError {
                    kind: TrialErrorKind::Error,
                    message: e.to_string(),
                })?;
                let b = fam.bundle_on_x()?;
                acc.set(&format!("{}.dim_MX", f.name), moduli_dim_eq1(&fam.threefold, &b)?);
                acc.set(&format!("{}.one_minus_chi_end", f.name), 1 - chi_end(&fam.threefold, &b)?);
            }
        }
        CheckParams::LagrangianLedger(p) => {
            for f in selected_families(p, catalog)? {
                let fam = f.family().map_err(|e| TrialError {
                    kind: TrialErrorKind::Error,
                    message: e.to_string(),
                })?;
                let l = lagrangian_ledger(&fam)?;
                acc.set(&format!("{}.dim_MX", f.name), l.dim_mx);
                acc.set(&format!("{}.dim_MS", f.name), l.dim_ms);
                acc.flag(&format!("{}.is_half", f.name), l.is_half);
            }
        }
        CheckParams::HilbertOracle(p) => hilbert_oracle(&mut acc, p, field, seed)?,
    }
    Ok(acc.done())
}

fn selected_families<'a>(
    p: &FamilyParams,
    catalog: &'a Catalog,
) -> Result<Vec<&'a crate::catalog::FamilyEntry>, TrialError> {
    match &p.families {
        None => Ok(catalog.families.iter().collect()),
        Some(names) => names
            .iter()
            .map(|n| catalog.family(n).ok_or_else(|| Error::UnknownFamily(n.clone()).into()))
            .collect(),
    }
}

/// Koszul series against elimination on random complete intersections, and
/// ranks over Q against ranks over GF(p) on random integer matrices.
fn hilbert_oracle(acc: &mut Acc, p: &OracleParams, field: Field, seed: u64) -> Result<(), TrialError> {
    let mut rng = SplitMix64::new(seed);
    let (mut pieces, mut agree, mut mismatches, mut skipped) = (0i64, 0i64, 0i64, 0i64);
    for _ in 0..p.instances {
        let n = 2 + rng.below(p.max_vars as u64 - 1) as usize;
        let c = 1 + rng.below(n.min(4) as u64) as usize;
        let degrees: Vec<u32> = (0..c).map(|_| 1 + rng.below(p.max_degree as u64) as u32).collect();
        let gens = degrees.iter().map(|&d| random::form(n, d, field, &mut rng)).collect();
        let q = GradedQuotient::new(n, field, gens)?;
        for t in 0..=p.max_t {
            match q.quotient_dim(t) {
                Ok(d) => {
                    pieces += 1;
                    if d as u64 == koszul_hilbert(&degrees, n, t) {
                        agree += 1;
                    } else {
                        mismatches += 1;
                    }
                }
                Err(Error::ResourceCap(_)) => skipped += 1,
                Err(e) => return Err(e.into()),
            }
        }
    }
    acc.set("ci_instances", p.instances);
    acc.set("ci_pieces_checked", pieces);
    acc.set("ci_agree", agree);
    acc.set("ci_mismatches", mismatches);
    acc.set("ci_skipped_cap", skipped);

    let (mut rank_agree, mut rank_mismatches) = (0i64, 0i64);
    for _ in 0..p.matrices {
        let rows = 1 + rng.below(p.max_matrix_size as u64) as usize;
        let cols = 1 + rng.below(p.max_matrix_size as u64) as usize;
        let k = rng.below(rows.min(cols) as u64 + 1) as usize;
        let a = low_rank_integers(rows, cols, k, &mut rng);
        let rq = ExactMatrix::from_i64(Field::Rational, &a)?.rank();
        let rp = ExactMatrix::from_i64(field, &a)?.rank();
        if rq == rp {
            rank_agree += 1;
        } else {
            rank_mismatches += 1;
        }
    }
    acc.set("matrices", p.matrices);
    acc.set("rank_agree", rank_agree);
    acc.set("rank_mismatches", rank_mismatches);
    Ok(())
}

/// `rows x k` times `k x cols` with entries in `[-9, 9]`, so ranks vary.
fn low_rank_integers(rows: usize, cols: usize, k: usize, rng: &mut SplitMix64) -> Vec<Vec<i64>> {
    let mut draw = |r: usize, c: usize| -> Vec<Vec<i64>> {
        (0..r).map(|_| (0..c).map(|_| rng.range_i64(-9, 9)).collect()).collect()
    };
    let l = draw(rows, k);
    let r = draw(k, cols);
    (0..rows)
        .map(|i| (0..cols).map(|j| (0..k).map(|t| l[i][t] * r[t][j]).sum()).collect())
        .collect()
}
