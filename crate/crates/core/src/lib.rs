//! Podcast corpus construction and ecosystem analytics.
//!
//! The crate turns raw feed metadata, word-timestamped transcripts, prosodic
//! frame streams and diarization segments into quality-filtered episode
//! records, speaker turns, host/guest role assignments, a podcast guest
//! network, and topic / mention time series.
//!
//! Stages are organised as modules that mirror the pipeline order:
//!
//! * [`feed`]: RSS parsing, duration parsing, date/language scoping
//! * [`quality`]: 4-gram repetition filter and hallucinated-tail trimming
//! * [`turns`]: prosody alignment, speaker assignment, turn segmentation
//! * [`roles`]: candidate names, role classification, agreement statistics
//! * [`network`]: guest bipartite graph, one-mode projection, modularity
//! * [`topics`]: LDA by collapsed Gibbs sampling and time-series analytics
//! * [`pipeline`]: configuration, per-stage manifests and orchestration
//!
//! Shared record types and their on-disk schemas live in [`model`].

pub mod feed;
pub mod model;
pub mod network;
pub mod pipeline;
pub mod quality;
pub mod roles;
pub mod stats;
pub mod text;
pub mod topics;
pub mod turns;

pub use model::{
    Category, EpisodeMeta, EpisodeRecord, EpisodeTopics, PodcastMeta, Prosody, RoleAssignment, RoleLabel, Turn,
    TurnRole, WordRecord, SCHEMA_VERSION,
};
