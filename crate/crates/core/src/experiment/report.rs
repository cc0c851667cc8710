use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use super::config::{CheckKind, ExperimentConfig};
use crate::error::Result;

pub const TOOL_NAME: &str = "qhlab";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One output file, rendered in memory so that writing can be serialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

impl Artifact {
    pub fn json<S: Serialize>(name: impl Into<String>, value: &S) -> Result<Self> {
        let mut bytes = serde_json::to_vec_pretty(value)?;
        bytes.push(b'\n');
        Ok(Self { name: name.into(), bytes })
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub check: CheckKind,
    pub passed: bool,
    /// Check-specific results, embedded under `results` in the check report.
    pub results: Value,
    /// Tables and matrices written next to the report.
    pub tables: Vec<Artifact>,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub config: ExperimentConfig,
    pub outcomes: Vec<CheckOutcome>,
}

fn header(config: &ExperimentConfig) -> Value {
    json!({ "tool": { "name": TOOL_NAME, "version": TOOL_VERSION }, "config": config.to_json() })
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    /// Every file of the run, in a fixed order: one report per check with its tables,
    /// then `summary.json`.
    pub fn artifacts(&self) -> Result<Vec<Artifact>> {
        let mut out = Vec::new();
        for o in &self.outcomes {
            let mut doc = header(&self.config);
            doc["check"] = json!(o.check.as_str());
            doc["passed"] = json!(o.passed);
            doc["tables"] = json!(o.tables.iter().map(|t| t.name.as_str()).collect::<Vec<_>>());
            doc["results"] = o.results.clone();
            out.push(Artifact::json(format!("{}.json", o.check.as_str()), &doc)?);
            out.extend(o.tables.iter().cloned());
        }
        let mut summary = header(&self.config);
        summary["passed"] = json!(self.passed());
        summary["checks"] =
            json!(self.outcomes.iter().map(|o| json!({"check": o.check.as_str(), "passed": o.passed})).collect::<Vec<_>>());
        out.push(Artifact::json("summary.json", &summary)?);
        Ok(out)
    }

    /// Writes every artifact under `dir`, creating it if needed.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        self.artifacts()?
            .into_iter()
            .map(|a| {
                let path = dir.join(&a.name);
                std::fs::write(&path, &a.bytes)?;
                Ok(path)
            })
            .collect()
    }
}
