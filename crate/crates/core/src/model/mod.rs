//! Shared domain types, their invariants, and the on-disk JSONL schemas.
//!
//! Two release schemas exist: episode-level records ([`EpisodeRecord`]:
//! metadata, full word-level transcript, quality outcome, role assignments)
//! and turn-level records ([`Turn`], keyed back to the episode). Every line of
//! every JSONL file starts with a `schema_version` field.

mod jsonl;
mod types;
mod validate;

pub use jsonl::{read_jsonl, read_jsonl_lenient, write_jsonl, JsonlError, LineOutcome};
pub use types::*;
pub use validate::{validate_corpus, validate_episode, validate_turns, ValidationReport, Violation};

/// Version written at the head of every JSONL line.
pub const SCHEMA_VERSION: u32 = 1;

#[cfg(test)]
pub(crate) use validate::tests::sample as sample_record;
