//! Scenario files: which check to run, over which field, with which seed.
//!
//! ```toml
//! name = "conics on cubics"
//! check = "conic_on_cubic"
//! field = "prime"        # or "rational"
//! prime = 32003          # optional, prime fields only
//! seed = 42
//! trials = 20
//!
//! [params]               # check-specific, see `CheckParams`
//!
//! [expected]             # optional; replaces the catalog defaults
//! h0_N = 4
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use fano_core::{Field, DEFAULT_PRIME};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    ConicOnCubic,
    #[serde(rename = "elliptic_quartic_222")]
    EllipticQuartic222,
    CanonicalG3Quartic,
    G3Witness,
    DiscriminantNet,
    CayleyBacharach,
    Stability,
    RestrictionSurjectivity,
    Eq1Table,
    LagrangianLedger,
    HilbertOracle,
}

impl CheckKind {
    pub const ALL: [CheckKind; 11] = [
        CheckKind::ConicOnCubic,
        CheckKind::EllipticQuartic222,
        CheckKind::CanonicalG3Quartic,
        CheckKind::G3Witness,
        CheckKind::DiscriminantNet,
        CheckKind::CayleyBacharach,
        CheckKind::Stability,
        CheckKind::RestrictionSurjectivity,
        CheckKind::Eq1Table,
        CheckKind::LagrangianLedger,
        CheckKind::HilbertOracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::ConicOnCubic => "conic_on_cubic",
            CheckKind::EllipticQuartic222 => "elliptic_quartic_222",
            CheckKind::CanonicalG3Quartic => "canonical_g3_quartic",
            CheckKind::G3Witness => "g3_witness",
            CheckKind::DiscriminantNet => "discriminant_net",
            CheckKind::CayleyBacharach => "cayley_bacharach",
            CheckKind::Stability => "stability",
            CheckKind::RestrictionSurjectivity => "restriction_surjectivity",
            CheckKind::Eq1Table => "eq1_table",
            CheckKind::LagrangianLedger => "lagrangian_ledger",
            CheckKind::HilbertOracle => "hilbert_oracle",
        }
    }

    /// Checks that sample random instances and so need a prime field.
    pub fn is_randomized(self) -> bool {
        !matches!(
            self,
            CheckKind::G3Witness | CheckKind::Eq1Table | CheckKind::LagrangianLedger
        )
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Rational,
    Prime,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub check: CheckKind,
    #[serde(default = "default_field")]
    pub field: FieldKind,
    pub prime: Option<u64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: u32,
    #[serde(default)]
    pub params: toml::Table,
    pub expected: Option<BTreeMap<String, i64>>,
}

fn default_field() -> FieldKind {
    FieldKind::Prime
}

fn default_trials() -> u32 {
    1
}

/// Command-line overrides of scenario values.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub trials: Option<u32>,
    pub seed: Option<u64>,
    pub prime: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuarticVariant {
    Generic,
    Engineered,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointConfig {
    Coplanar,
    Collinear,
    Spanning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Conic,
    EllipticQuartic,
    Canonical,
}

impl CurveKind {
    fn as_str(self) -> &'static str {
        match self {
            CurveKind::Conic => "conic",
            CurveKind::EllipticQuartic => "elliptic_quartic",
            CurveKind::Canonical => "canonical",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuarticParams {
    #[serde(default = "generic")]
    pub variant: QuarticVariant,
}

fn generic() -> QuarticVariant {
    QuarticVariant::Generic
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetParams {
    #[serde(default = "default_net_size")]
    pub m: usize,
    #[serde(default)]
    pub engineered: bool,
    /// Target number of distinct discriminant points per net.
    #[serde(default = "default_points")]
    pub points: usize,
}

fn default_net_size() -> usize {
    6
}

fn default_points() -> usize {
    30
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointParams {
    #[serde(default = "coplanar")]
    pub config: PointConfig,
}

fn coplanar() -> PointConfig {
    PointConfig::Coplanar
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StabilityParams {
    #[serde(default = "conic")]
    pub curve: CurveKind,
    #[serde(default = "one")]
    pub l_twist: i64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionParams {
    #[serde(default = "elliptic_quartic")]
    pub curve: CurveKind,
    #[serde(default = "one")]
    pub j: i64,
}

fn conic() -> CurveKind {
    CurveKind::Conic
}

fn elliptic_quartic() -> CurveKind {
    CurveKind::EllipticQuartic
}

fn one() -> i64 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyParams {
    /// Catalog family names; all families when absent.
    pub families: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleParams {
    #[serde(default = "default_instances")]
    pub instances: usize,
    #[serde(default = "default_matrices")]
    pub matrices: usize,
    #[serde(default = "default_max_vars")]
    pub max_vars: usize,
    #[serde(default = "default_max_degree")]
    pub max_degree: u32,
    #[serde(default = "default_max_t")]
    pub max_t: i64,
    #[serde(default = "default_max_size")]
    pub max_matrix_size: usize,
}

fn default_instances() -> usize {
    50
}

fn default_matrices() -> usize {
    100
}

fn default_max_vars() -> usize {
    7
}

fn default_max_degree() -> u32 {
    3
}

fn default_max_t() -> i64 {
    5
}

fn default_max_size() -> usize {
    12
}

/// Typed `[params]` of a scenario.
#[derive(Debug, Clone)]
pub enum CheckParams {
    ConicOnCubic,
    EllipticQuartic222(QuarticParams),
    CanonicalG3Quartic,
    G3Witness,
    DiscriminantNet(NetParams),
    CayleyBacharach(PointParams),
    Stability(StabilityParams),
    RestrictionSurjectivity(RestrictionParams),
    Eq1Table(FamilyParams),
    LagrangianLedger(FamilyParams),
    HilbertOracle(OracleParams),
}

impl CheckParams {
    /// Key used to look up default expectations in the catalog.
    pub fn variant(&self) -> String {
        match self {
            CheckParams::EllipticQuartic222(p) => match p.variant {
                QuarticVariant::Generic => "generic",
                QuarticVariant::Engineered => "engineered",
                QuarticVariant::Degenerate => "degenerate",
            }
            .into(),
            CheckParams::DiscriminantNet(p) => if p.engineered { "engineered" } else { "generic" }.into(),
            CheckParams::CayleyBacharach(p) => match p.config {
                PointConfig::Coplanar => "coplanar",
                PointConfig::Collinear => "collinear",
                PointConfig::Spanning => "spanning",
            }
            .into(),
            CheckParams::Stability(p) => format!("{}_L{}", p.curve.as_str(), p.l_twist),
            CheckParams::RestrictionSurjectivity(p) => format!("{}_j{}", p.curve.as_str(), p.j),
            _ => "default".into(),
        }
    }
}

fn typed<T: DeserializeOwned>(table: &toml::Table) -> CliResult<T> {
    toml::Value::Table(table.clone())
        .try_into()
        .map_err(|e: toml::de::Error| CliError::Scenario(format!("params: {}", e.message())))
}

fn no_params(check: CheckKind, table: &toml::Table) -> CliResult<()> {
    match table.keys().next() {
        None => Ok(()),
        Some(k) => Err(CliError::Scenario(format!("{check} takes no params, got `{k}`"))),
    }
}

impl Scenario {
    pub fn parse(text: &str) -> CliResult<Self> {
        let s: Scenario = toml::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn apply(&mut self, o: Overrides) -> CliResult<()> {
        if let Some(t) = o.trials {
            self.trials = t;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(p) = o.prime {
            self.field = FieldKind::Prime;
            self.prime = Some(p);
        }
        self.validate()
    }

    fn validate(&self) -> CliResult<()> {
        if self.trials < 1 {
            return Err(CliError::Scenario("trials must be at least 1".into()));
        }
        if self.field == FieldKind::Rational && self.prime.is_some() {
            return Err(CliError::Scenario("`prime` given for a rational field".into()));
        }
        let field = self.field()?;
        if self.check.is_randomized() && field == Field::Rational {
            return Err(CliError::Scenario(format!(
                "{} samples random instances and needs a prime field",
                self.check
            )));
        }
        let params = self.params()?;
        if let CheckParams::DiscriminantNet(p) = &params {
            if !(1..=fano_core::geometry::MAX_NET_SIZE).contains(&p.m) || p.points == 0 {
                return Err(CliError::Scenario(format!("net size {} / points {}", p.m, p.points)));
            }
            if p.engineered && p.m < 3 {
                return Err(CliError::Scenario("engineered nets need m >= 3".into()));
            }
        }
        if let CheckParams::HilbertOracle(p) = &params {
            if p.max_vars < 2 || p.max_degree < 1 || p.max_t < 0 || p.max_matrix_size < 1 {
                return Err(CliError::Scenario("hilbert_oracle bounds out of range".into()));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> CliResult<Field> {
        match self.field {
            FieldKind::Rational => Ok(Field::Rational),
            FieldKind::Prime => {
                Field::prime(self.prime.unwrap_or(DEFAULT_PRIME)).map_err(|e| CliError::Scenario(e.to_string()))
            }
        }
    }

    pub fn params(&self) -> CliResult<CheckParams> {
        let t = &self.params;
        Ok(match self.check {
            CheckKind::ConicOnCubic => {
                no_params(self.check, t)?;
                CheckParams::ConicOnCubic
            }
            CheckKind::CanonicalG3Quartic => {
                no_params(self.check, t)?;
                CheckParams::CanonicalG3Quartic
            }
            CheckKind::G3Witness => {
                no_params(self.check, t)?;
                CheckParams::G3Witness
            }
            CheckKind::EllipticQuartic222 => CheckParams::EllipticQuartic222(typed(t)?),
            CheckKind::DiscriminantNet => CheckParams::DiscriminantNet(typed(t)?),
            CheckKind::CayleyBacharach => CheckParams::CayleyBacharach(typed(t)?),
            CheckKind::Stability => CheckParams::Stability(typed(t)?),
            CheckKind::RestrictionSurjectivity => CheckParams::RestrictionSurjectivity(typed(t)?),
            CheckKind::Eq1Table => CheckParams::Eq1Table(typed(t)?),
            CheckKind::LagrangianLedger => CheckParams::LagrangianLedger(typed(t)?),
            CheckKind::HilbertOracle => CheckParams::HilbertOracle(typed(t)?),
        })
    }
}
