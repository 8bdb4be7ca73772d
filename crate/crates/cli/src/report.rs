use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::RunConfig;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub paper_anchor: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// Passes iff the residual is finite and at most the tolerance.
    pub fn new(name: &str, paper_anchor: &str, max_residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            paper_anchor: paper_anchor.to_string(),
            max_residual,
            tolerance,
            pass: max_residual.is_finite() && max_residual <= tolerance,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {:<52} residual {:.3e}  tolerance {:.1e}  [{}]",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.max_residual,
            self.tolerance,
            self.paper_anchor
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Environment {
    pub version: String,
    pub seed: u64,
    pub config: RunConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub command: String,
    pub pass: bool,
    pub records: Vec<CheckRecord>,
    pub details: BTreeMap<String, serde_json::Value>,
    pub environment: Environment,
}

impl VerificationReport {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Self {
            command: command.to_string(),
            pass: true,
            records: Vec::new(),
            details: BTreeMap::new(),
            environment: Environment {
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed: config.seed,
                config: config.clone(),
            },
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.pass &= record.pass;
        self.records.push(record);
    }

    pub fn detail<T: Serialize>(&mut self, key: &str, value: &T) {
        let v = serde_json::to_value(value).expect("report details serialize");
        self.details.insert(key.to_string(), v);
    }

    /// Appends the records and details of `other`, details keyed under its command name.
    pub fn absorb(&mut self, other: VerificationReport) {
        for r in other.records {
            self.push(r);
        }
        if !other.details.is_empty() {
            let v = serde_json::to_value(&other.details).expect("report details serialize");
            self.details.insert(other.command, v);
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
