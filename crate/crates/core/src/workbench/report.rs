//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

use crate::checks::CheckOutcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    /// Names the check and the inputs it covered: `name@digest`, the digest
    /// fingerprinting the exact tuples tested.
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    /// Wall time of the computation that produced this record.
    pub millis: u64,
}

impl CheckRecord {
    pub fn from_outcome(o: &CheckOutcome, millis: u64) -> Self {
        CheckRecord {
            id: if o.inputs.is_empty() { o.id.clone() } else { format!("{}@{}", o.id, o.inputs) },
            status: if o.passed() { Status::Pass } else { Status::Fail },
            witness: o.witness.as_ref().map(|w| format!("{}/{} failed; first: {w}", o.failures, o.tested)),
            millis,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub version: String,
    pub config: serde_json::Value,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: &str, config: serde_json::Value, seed: u64, checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().filter(|c| c.passed()).count();
        VerificationReport {
            suite: suite.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            seed,
            summary: Summary { passed, failed: checks.len() - passed },
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// The same report with every timing field zeroed.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.millis = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
