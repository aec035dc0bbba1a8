//! Host / guest role inference for person names mentioned in an episode.
//!
//! Candidate names come from the first 350 transcript words and from the
//! episode and podcast descriptions. Each mention is classified by a
//! [`RoleClassifier`]; multiple mentions of one name are reduced to the
//! single most confident prediction.

mod aggregate;
mod agreement;
mod candidates;
mod classifier;
mod summary;

pub use aggregate::{aggregate_mentions, infer_roles};
pub use agreement::{krippendorff_alpha, AgreementError};
pub use candidates::{
    candidates_from_spans, extract_candidates, CandidateMention, EntitySpan, ExtractorConfig, MentionSource,
    CONTEXT_TOKENS, TRANSCRIPT_WINDOW,
};
pub use classifier::{
    load_predictions_csv, CueClassifier, CueConfig, CuePattern, CueSide, CueStrength, FileClassifier, Prediction,
    RoleClassifier,
};
pub use summary::{role_count_summary, CategoryRoleStats, EpisodeRoleCounts, RoleCountSummary};

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum RolesError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: row {row}: {message}")]
    Row { path: PathBuf, row: usize, message: String },
    #[error("cue configuration: {0}")]
    Config(String),
}
