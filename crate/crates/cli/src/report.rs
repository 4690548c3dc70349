//! JSON report with a fixed field order.

use serde::{Deserialize, Serialize};

use crate::checks::Values;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
    ResourceCap,
    InsufficientSamples,
}

impl Status {
    /// 0 pass, 1 mathematical failure, 3 resource cap or insufficient samples.
    /// (2 is reserved for input errors, which never produce a report.)
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail | Status::Error => 1,
            Status::ResourceCap | Status::InsufficientSamples => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial: u32,
    pub seed: u64,
    pub resamples: u32,
    pub status: Status,
    pub values: Values,
    pub pass: bool,
    /// Expected keys whose computed value differs or is missing.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub value: Values,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aggregate {
    pub passes: u32,
    pub failures: u32,
    pub errors: u32,
    pub resource_capped: u32,
    pub insufficient: u32,
    pub status: Status,
}

impl Aggregate {
    pub fn from_results(results: &[TrialResult]) -> Self {
        let count = |s: Status| results.iter().filter(|r| r.status == s).count() as u32;
        let (passes, failures, errors) = (count(Status::Pass), count(Status::Fail), count(Status::Error));
        let (resource_capped, insufficient) = (count(Status::ResourceCap), count(Status::InsufficientSamples));
        let status = if failures > 0 {
            Status::Fail
        } else if errors > 0 {
            Status::Error
        } else if resource_capped > 0 {
            Status::ResourceCap
        } else if insufficient > 0 {
            Status::InsufficientSamples
        } else {
            Status::Pass
        };
        Self {
            passes,
            failures,
            errors,
            resource_capped,
            insufficient,
            status,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub check: String,
    pub params: serde_json::Value,
    pub field: String,
    pub seed: u64,
    pub prng: String,
    pub trials: u32,
    pub resamples: u64,
    pub results: Vec<TrialResult>,
    pub expected: Expected,
    pub aggregate: Aggregate,
    pub notes: Vec<String>,
    pub version: String,
    pub catalog_version: u32,
    pub timestamp: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.aggregate.status == Status::Pass
    }

    pub fn exit_code(&self) -> i32 {
        self.aggregate.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The report with its timestamp zeroed, for reproducibility comparisons.
    pub fn without_timestamp(&self) -> Self {
        Self {
            timestamp: 0,
            ..self.clone()
        }
    }
}
