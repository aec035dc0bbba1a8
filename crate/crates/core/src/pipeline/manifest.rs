use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{PipelineError, Stage};
use crate::model::SCHEMA_VERSION;

/// An input unit a stage could not carry forward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reject {
    pub id: String,
    pub stage: Stage,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageManifest {
    pub stage: Stage,
    pub input: usize,
    pub retained: usize,
    pub rejected: usize,
    /// `input == retained + rejected`.
    pub conserved: bool,
    pub seconds: f64,
    pub config_hash: String,
    pub outputs: Vec<String>,
    #[serde(default)]
    pub details: BTreeMap<String, serde_json::Value>,
}

impl StageManifest {
    pub fn new(stage: Stage, input: usize, retained: usize, rejected: usize, config_hash: String) -> Self {
        StageManifest {
            stage,
            input,
            retained,
            rejected,
            conserved: input == retained + rejected,
            seconds: 0.0,
            config_hash,
            outputs: Vec::new(),
            details: BTreeMap::new(),
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("manifest details are plain data");
        self.details.insert(key.to_string(), v);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub config_hash: String,
    pub workers: usize,
    pub stages: Vec<StageManifest>,
    /// Every stage conserved its counts.
    pub ok: bool,
}

impl RunManifest {
    pub fn new(config_hash: String, workers: usize, stages: Vec<StageManifest>) -> Self {
        let ok = stages.iter().all(|s| s.conserved);
        RunManifest { config_hash, workers, stages, ok }
    }
}

#[derive(Serialize)]
struct Versioned<'a, T> {
    schema_version: u32,
    #[serde(flatten)]
    inner: &'a T,
}

pub(crate) fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<(), PipelineError> {
    let text = serde_json::to_string_pretty(&Versioned { schema_version: SCHEMA_VERSION, inner: value })
        .expect("manifests serialize");
    std::fs::write(path, text + "\n").map_err(|source| PipelineError::Io { path: path.to_path_buf(), source })
}
