//! Scenario execution: expectations, parallel trials, report assembly.

use std::time::{SystemTime, UNIX_EPOCH};

use fano_core::rng::{derive_seed, PRNG_NAME};
use rayon::prelude::*;

use crate::catalog::Catalog;
use crate::checks::{run_trial, TrialErrorKind, Values};
use crate::error::{CliError, CliResult};
use crate::report::{Aggregate, Expected, Report, Status, TrialResult};
use crate::scenario::{CheckKind, CheckParams, FamilyParams, Scenario};

const GENERICITY_NOTE: &str = "randomized genericity check over a prime field: passes only if every trial \
passes; degenerate draws are redrawn (at most 100 times per trial) and counted in `resamples`; \
a failure can also come from a bad prime or an unlucky special instance, so the failing trial seed is kept";
const SATURATION_NOTE: &str = "ideal pieces are spans of generator multiples without saturation; \
every curve here is a complete intersection, whose generated ideal is saturated";
const SMOOTHNESS_NOTE: &str = "normal-bundle numbers are sheaf cohomology when C is smooth and projectively \
normal and X is smooth along C; smoothness of sampled instances is not verified";

fn family_names(p: &FamilyParams, catalog: &Catalog) -> CliResult<Vec<String>> {
    let names: Vec<String> = match &p.families {
        Some(n) => n.clone(),
        None => catalog.families.iter().map(|f| f.name.clone()).collect(),
    };
    if let Some(bad) = names.iter().find(|n| catalog.family(n).is_none()) {
        return Err(CliError::Scenario(format!("unknown family `{bad}`")));
    }
    Ok(names)
}

/// Expected values: the scenario's own table, else the catalog defaults.
pub fn expectations(s: &Scenario, params: &CheckParams, catalog: &Catalog) -> CliResult<Expected> {
    if let Some(v) = &s.expected {
        return Ok(Expected {
            value: v.clone(),
            provenance: "scenario file".into(),
        });
    }
    let mut value = Values::new();
    let provenance = match params {
        CheckParams::Eq1Table(p) => {
            for n in family_names(p, catalog)? {
                let dim = catalog.family(&n).expect("checked").dim_mx;
                value.insert(format!("{n}.dim_MX"), dim);
                value.insert(format!("{n}.one_minus_chi_end"), dim);
            }
            "catalog dim_mx column; the HRR value 1 - chi(End E) must agree".to_string()
        }
        CheckParams::LagrangianLedger(p) => {
            for n in family_names(p, catalog)? {
                let f = catalog.family(&n).expect("checked");
                value.insert(format!("{n}.dim_MX"), f.dim_mx);
                value.insert(format!("{n}.dim_MS"), f.dim_ms);
                value.insert(format!("{n}.is_half"), 1);
            }
            "catalog dim_mx and dim_ms columns; M_X embeds in M_S as a half-dimensional subvariety".to_string()
        }
        _ => {
            let variant = params.variant();
            let entry = catalog.expectation(s.check.as_str(), &variant).ok_or_else(|| {
                CliError::Scenario(format!(
                    "no default expectation for {} variant `{variant}`; give an [expected] table",
                    s.check
                ))
            })?;
            value = entry.values.clone();
            if let CheckParams::DiscriminantNet(p) = params {
                value.insert("degree".into(), p.m as i64);
            }
            entry.provenance.clone()
        }
    };
    Ok(Expected { value, provenance })
}

fn notes(s: &Scenario, params: &CheckParams) -> Vec<String> {
    let mut out = Vec::new();
    if s.check.is_randomized() {
        out.push(GENERICITY_NOTE.to_string());
    }
    match s.check {
        CheckKind::ConicOnCubic | CheckKind::EllipticQuartic222 | CheckKind::CanonicalG3Quartic | CheckKind::G3Witness => {
            out.push(SATURATION_NOTE.into());
            out.push(SMOOTHNESS_NOTE.into());
        }
        CheckKind::Stability | CheckKind::RestrictionSurjectivity => out.push(SATURATION_NOTE.into()),
        CheckKind::Eq1Table => out.push(
            "dim M_X is computed as i(Delta.h)/2 + 1 - r^2 and cross-checked against 1 - chi(End E) from \
             Hirzebruch-Riemann-Roch"
                .into(),
        ),
        CheckKind::LagrangianLedger => out.push(
            "c2 on the K3 section is derived as i * deg C; only the dimension count is verified".into(),
        ),
        CheckKind::DiscriminantNet => out.push(
            "the scan restricts the determinant to lines through a basis point of the net and a random point, \
             finds roots by exhausting the field, and histograms the corank at distinct roots"
                .into(),
        ),
        CheckKind::HilbertOracle => {
            if let CheckParams::HilbertOracle(p) = params {
                out.push(format!(
                    "complete intersections in at most {} variables, degrees at most {}, t at most {}; pieces \
                     beyond the matrix resource cap are skipped and counted in ci_skipped_cap",
                    p.max_vars, p.max_degree, p.max_t
                ));
            }
        }
        CheckKind::CayleyBacharach => {}
    }
    out
}

fn judge(values: &Values, expected: &Values) -> Vec<String> {
    expected
        .iter()
        .filter(|(k, v)| values.get(*k) != Some(v))
        .map(|(k, v)| match values.get(k) {
            Some(got) => format!("{k}: expected {v}, got {got}"),
            None => format!("{k}: expected {v}, not computed"),
        })
        .collect()
}

/// Runs every trial of the scenario on the current rayon pool.
pub fn run(s: &Scenario, catalog: &Catalog) -> CliResult<Report> {
    let params = s.params()?;
    let field = s.field()?;
    let expected = expectations(s, &params, catalog)?;
    let results: Vec<TrialResult> = (0..s.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = derive_seed(s.seed, trial as u64);
            match run_trial(&params, field, seed, catalog) {
                Ok(c) => {
                    let mismatches = judge(&c.values, &expected.value);
                    let status = if !mismatches.is_empty() {
                        Status::Fail
                    } else if c.insufficient.is_some() {
                        Status::InsufficientSamples
                    } else {
                        Status::Pass
                    };
                    TrialResult {
                        trial,
                        seed,
                        resamples: c.resamples,
                        status,
                        values: c.values,
                        pass: status == Status::Pass,
                        mismatches,
                        message: c.insufficient,
                    }
                }
                Err(e) => TrialResult {
                    trial,
                    seed,
                    resamples: 0,
                    status: match e.kind {
                        TrialErrorKind::ResourceCap => Status::ResourceCap,
                        TrialErrorKind::InsufficientSamples => Status::InsufficientSamples,
                        TrialErrorKind::Error => Status::Error,
                    },
                    values: Values::new(),
                    pass: false,
                    mismatches: Vec::new(),
                    message: Some(e.message),
                },
            }
        })
        .collect();
    let aggregate = Aggregate::from_results(&results);
    Ok(Report {
        name: s.name.clone(),
        check: s.check.as_str().into(),
        params: serde_json::to_value(&s.params).expect("toml tables are JSON-compatible"),
        field: field.to_string(),
        seed: s.seed,
        prng: PRNG_NAME.into(),
        trials: s.trials,
        resamples: results.iter().map(|r| r.resamples as u64).sum(),
        results,
        expected,
        aggregate,
        notes: notes(s, &params),
        version: env!("CARGO_PKG_VERSION").into(),
        catalog_version: catalog.version,
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    })
}

/// [`run`] on a dedicated pool of `threads` workers (all cores when `None`).
pub fn run_with_threads(s: &Scenario, catalog: &Catalog, threads: Option<usize>) -> CliResult<Report> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Scenario(format!("thread pool: {e}")))?;
    pool.install(|| run(s, catalog))
}

/// Scenarios run by `fano selftest`: the oracle equivalences and the fixed
/// witness computation.
pub fn selftest_scenarios() -> Vec<Scenario> {
    [
        "name = \"selftest: Hilbert functions and ranks\"\ncheck = \"hilbert_oracle\"\nseed = 1\n",
        "name = \"selftest: witness maps over Q\"\ncheck = \"g3_witness\"\nfield = \"rational\"\n",
        "name = \"selftest: moduli dimension table\"\ncheck = \"eq1_table\"\n",
    ]
    .iter()
    .map(|t| Scenario::parse(t).expect("built-in scenario parses"))
    .collect()
}
