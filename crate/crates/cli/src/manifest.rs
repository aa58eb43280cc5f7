use std::collections::BTreeMap;
use std::time::Instant;

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

/// Records how a report was produced. Everything except `wall_time_ms` is a
/// function of the command line, so re-running the recorded command gives a
/// byte-identical report; wall time is only filled in under `--timing`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct RunManifest {
    pub command: String,
    pub k: Option<usize>,
    pub ell: Option<usize>,
    pub i: Option<usize>,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
    /// Remaining flags, by name.
    pub parameters: BTreeMap<String, String>,
    pub tool_version: String,
    pub wall_time_ms: Option<u64>,
    pub outcome: String,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            k: None,
            ell: None,
            i: None,
            budget: None,
            seed: None,
            parameters: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_ms: None,
            outcome: String::new(),
        }
    }

    pub fn instance(mut self, k: usize, ell: usize) -> Self {
        self.k = Some(k);
        self.ell = Some(ell);
        self
    }

    pub fn parameter(mut self, name: &str, value: impl ToString) -> Self {
        self.parameters.insert(name.to_string(), value.to_string());
        self
    }

    pub fn finish(&mut self, outcome: &str, started: Option<Instant>) {
        self.outcome = outcome.to_string();
        self.wall_time_ms = started.map(|t| t.elapsed().as_millis() as u64);
    }
}

/// A report together with the manifest of the run that produced it.
#[derive(Debug, Clone, Serialize, Deserialize, JsonSchema)]
pub struct Certificate<T> {
    pub manifest: RunManifest,
    pub report: T,
}
