use std::collections::BTreeMap;
use std::path::Path;

use jetlab_core::jets::{SubmanifoldKind, SubmanifoldSpec};
use jetlab_core::C64;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmanifoldConfig {
    pub kind: SubmanifoldKind,
    pub d: usize,
}

/// Base points for `jetgram`, full ambient coordinates as `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointPair {
    pub z: Vec<[f64; 2]>,
    pub w: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestFlags {
    /// Inserts a phase on one side of the jet cocycle so the homogeneity check must fail.
    #[serde(default)]
    pub corrupt_cocycle: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub m: usize,
    pub weights: Vec<f64>,
    pub submanifold: SubmanifoldConfig,
    /// `k` for jet Grams, cocycles and the quotient; `n` for the decomposition.
    pub jet_order: usize,
    /// Degree cutoff of the quotient kernel series.
    pub kernel_truncation: usize,
    /// Degree cutoff of the compressed operator matrix.
    pub operator_truncation: usize,
    pub samples: usize,
    pub sample_radius: f64,
    pub group_samples: usize,
    /// `0` samples identity tuples only.
    pub group_radius: f64,
    pub seed: u64,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub points: Option<PointPair>,
    #[serde(default)]
    pub test_flags: TestFlags,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(1..=5).contains(&self.m) {
            return Err(bad(format!("m = {} must be in 1..=5", self.m)));
        }
        if self.weights.len() != self.m {
            return Err(bad(format!("expected {} weights, got {}", self.m, self.weights.len())));
        }
        if let Some(w) = self.weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(bad(format!("weight {w} is not positive")));
        }
        self.submanifold_spec()?;
        if !(1..=5).contains(&self.jet_order) {
            return Err(bad(format!("jet_order = {} must be in 1..=5", self.jet_order)));
        }
        if self.kernel_truncation > 1024 || self.operator_truncation > 400 {
            return Err(bad("truncation degrees are capped at 1024 (kernel) and 400 (operator)"));
        }
        if !(1..=1000).contains(&self.samples) || self.group_samples > 256 {
            return Err(bad("samples must be in 1..=1000 and group_samples at most 256"));
        }
        if !(self.sample_radius > 0.0 && self.sample_radius < 1.0) {
            return Err(bad(format!("sample_radius = {} must be in (0, 1)", self.sample_radius)));
        }
        if !(0.0..0.95).contains(&self.group_radius) {
            return Err(bad(format!("group_radius = {} must be in [0, 0.95)", self.group_radius)));
        }
        if let Some((k, t)) = self.tolerances.iter().find(|(_, t)| !(t.is_finite() && **t >= 0.0)) {
            return Err(bad(format!("tolerance {k:?} = {t} is not a non-negative number")));
        }
        if let Some(p) = &self.points {
            if p.z.len() != self.m || p.w.len() != self.m {
                return Err(bad(format!("points need {} coordinates each", self.m)));
            }
        }
        Ok(())
    }

    pub fn submanifold_spec(&self) -> Result<SubmanifoldSpec, CliError> {
        SubmanifoldSpec::new(self.submanifold.kind, self.m, self.submanifold.d).map_err(|e| bad(e.to_string()))
    }

    /// Configured base points, origin by default.
    pub fn base_points(&self) -> (Vec<C64>, Vec<C64>) {
        let conv = |v: &[[f64; 2]]| v.iter().map(|p| C64::new(p[0], p[1])).collect::<Vec<_>>();
        match &self.points {
            Some(p) => (conv(&p.z), conv(&p.w)),
            None => (vec![C64::new(0.0, 0.0); self.m], vec![C64::new(0.0, 0.0); self.m]),
        }
    }

    /// Override for `name`, then the `"*"` wildcard, then `default`.
    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).or_else(|| self.tolerances.get("*")).copied().unwrap_or(default)
    }
}
