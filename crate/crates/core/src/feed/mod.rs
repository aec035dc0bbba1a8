//! RSS feed parsing and corpus scoping.

mod duration;
mod manifest;
mod rss;
mod scope;

pub use duration::parse_duration;
pub use manifest::{read_manifest, FeedSource, FileFeedSource, ManifestEntry};
pub use rss::{episode_slug, hosting_platform, parse_feed, FeedDocument, IngestFlag, IngestedEpisode, ParsedFeed};
pub use scope::{filter_scope, DateWindow, QuarantineReason, ScopeOutcome};

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum FeedError {
    #[error("empty feed document")]
    Empty,
    #[error("malformed XML at byte {offset}: {message}")]
    Xml { offset: usize, message: String },
    #[error("feed has no <channel> element (root is <{root}>)")]
    MissingChannel { root: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("manifest {path}: {message}")]
    Manifest { path: PathBuf, message: String },
    #[error("date window start {start} is after end {end}")]
    InvertedWindow { start: chrono::NaiveDate, end: chrono::NaiveDate },
}
