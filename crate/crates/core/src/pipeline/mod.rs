//! Stage orchestration: each stage reads its predecessor's output
//! directory under the work directory and writes its own, together with a
//! manifest of input, retained and rejected counts.

mod config;
mod manifest;
mod report;
mod stages;

pub use config::{
    CleanConfig, PathsConfig, PipelineConfig, RolesConfig, RunConfig, ScopeConfig, SeriesConfig, TopicsConfig,
    TurnsConfig,
};
pub use manifest::{Reject, RunManifest, StageManifest};
pub use stages::{run_pipeline, run_stage};

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Ingest,
    Clean,
    Turns,
    Roles,
    Network,
    Topics,
    Series,
    Report,
}

impl Stage {
    pub const ALL: [Stage; 8] = [
        Stage::Ingest,
        Stage::Clean,
        Stage::Turns,
        Stage::Roles,
        Stage::Network,
        Stage::Topics,
        Stage::Series,
        Stage::Report,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Ingest => "ingest",
            Stage::Clean => "clean",
            Stage::Turns => "turns",
            Stage::Roles => "roles",
            Stage::Network => "network",
            Stage::Topics => "topics",
            Stage::Series => "series",
            Stage::Report => "report",
        }
    }

    /// The stage whose output this one reads.
    pub fn upstream(self) -> Option<Stage> {
        match self {
            Stage::Ingest => None,
            Stage::Clean => Some(Stage::Ingest),
            Stage::Turns => Some(Stage::Clean),
            Stage::Roles => Some(Stage::Turns),
            Stage::Network | Stage::Topics | Stage::Report => Some(Stage::Roles),
            Stage::Series => Some(Stage::Topics),
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stage::ALL
            .into_iter()
            .find(|st| st.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown stage {s:?}"))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("stage {stage} needs the output of stage {upstream}, but {path} does not exist")]
    MissingUpstream { stage: Stage, upstream: Stage, path: PathBuf },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error(transparent)]
    Jsonl(#[from] crate::model::JsonlError),
    #[error(transparent)]
    Feed(#[from] crate::feed::FeedError),
    #[error(transparent)]
    Roles(#[from] crate::roles::RolesError),
    #[error(transparent)]
    Network(#[from] crate::network::NetworkError),
    #[error(transparent)]
    Topics(#[from] crate::topics::TopicsError),
    #[error("worker pool: {0}")]
    Workers(String),
}
