//! Built-in family table and default expectations, shipped as TOML.

use std::collections::BTreeMap;

use fano_core::chern::{Family, FanoNumerics};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const CATALOG_TOML: &str = include_str!("../data/catalog.toml");

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    pub version: u32,
    #[serde(rename = "family")]
    pub families: Vec<FamilyEntry>,
    #[serde(rename = "expectation")]
    pub expectations: Vec<ExpectationEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyEntry {
    pub name: String,
    pub description: String,
    pub index: i64,
    pub degree: i64,
    pub rank: i64,
    pub c1: i64,
    pub curve_degree: i64,
    pub curve_genus: i64,
    pub dim_mx: i64,
    pub dim_ms: i64,
    pub provenance: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationEntry {
    pub check: String,
    pub variant: String,
    pub values: BTreeMap<String, i64>,
    pub provenance: String,
}

impl FamilyEntry {
    pub fn family(&self) -> CliResult<Family> {
        let threefold = FanoNumerics::new(self.index, self.degree)
            .map_err(|e| CliError::Catalog(format!("{}: {e}", self.name)))?;
        Ok(Family {
            name: self.name.clone(),
            threefold,
            rank: self.rank,
            c1_mult: self.c1,
            curve_degree: self.curve_degree,
            curve_genus: self.curve_genus,
        })
    }
}

impl Catalog {
    pub fn parse(text: &str) -> CliResult<Self> {
        let catalog: Catalog = toml::from_str(text).map_err(|e| CliError::Catalog(e.to_string()))?;
        for f in &catalog.families {
            if !f.family()?.serre_consistent() {
                return Err(CliError::Catalog(format!(
                    "{}: curve genus {} violates the Serre condition",
                    f.name, f.curve_genus
                )));
            }
        }
        Ok(catalog)
    }

    pub fn builtin() -> Self {
        Self::parse(CATALOG_TOML).expect("built-in catalog is valid")
    }

    pub fn family(&self, name: &str) -> Option<&FamilyEntry> {
        self.families.iter().find(|f| f.name == name)
    }

    /// Entry for `(check, variant)`, falling back to the check's `default`.
    pub fn expectation(&self, check: &str, variant: &str) -> Option<&ExpectationEntry> {
        let find = |v: &str| self.expectations.iter().find(|e| e.check == check && e.variant == v);
        find(variant).or_else(|| find("default"))
    }

    /// Plain-text family table for the `catalog` subcommand.
    pub fn table(&self) -> String {
        let mut out = format!("catalog version {}\n", self.version);
        out.push_str(&format!(
            "{:<22} {:>5} {:>6} {:>4} {:>3} {:>7} {:>6} {:>6} {:>6}  {}\n",
            "family", "index", "degree", "rank", "c1", "deg C", "g(C)", "dimMX", "dimMS", "source"
        ));
        for f in &self.families {
            out.push_str(&format!(
                "{:<22} {:>5} {:>6} {:>4} {:>3} {:>7} {:>6} {:>6} {:>6}  {}\n",
                f.name,
                f.index,
                f.degree,
                f.rank,
                f.c1,
                f.curve_degree,
                f.curve_genus,
                f.dim_mx,
                f.dim_ms,
                f.provenance
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_parses() {
        let c = Catalog::builtin();
        assert_eq!(c.families.len(), 16);
        assert!(c.family("conics_d3").is_some());
        assert!(c.expectation("restriction_surjectivity", "unlisted").is_some());
        assert!(c.expectation("stability", "unlisted").is_none());
    }

    #[test]
    fn serre_violations_are_rejected() {
        let bad = CATALOG_TOML.replacen("curve_genus = 0", "curve_genus = 3", 1);
        assert!(Catalog::parse(&bad).is_err());
    }
}
