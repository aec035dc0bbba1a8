use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::FeedError;
use crate::model::EpisodeRecord;

/// Inclusive calendar-date window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DateWindow {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

impl DateWindow {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Result<Self, FeedError> {
        if start > end {
            return Err(FeedError::InvertedWindow { start, end });
        }
        Ok(DateWindow { start, end })
    }

    pub fn contains(&self, d: NaiveDate) -> bool {
        self.start <= d && d <= self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuarantineReason {
    MissingDate,
    MissingLanguage,
}

#[derive(Debug, Clone, Default)]
pub struct ScopeOutcome {
    pub retained: Vec<EpisodeRecord>,
    /// Ids of dated episodes outside the window.
    pub out_of_window: Vec<String>,
    /// Ids of episodes whose language does not match.
    pub language_mismatch: Vec<String>,
    /// Episodes that cannot be scoped: absent date or absent language tag.
    pub quarantined: Vec<(EpisodeRecord, QuarantineReason)>,
}

impl ScopeOutcome {
    pub fn rejected(&self) -> usize {
        self.out_of_window.len() + self.language_mismatch.len() + self.quarantined.len()
    }
}

/// Keeps episodes dated inside `window` whose language tag starts with
/// `language_prefix` (case-insensitive). Undated or untagged episodes are
/// quarantined, never silently retained.
pub fn filter_scope(episodes: Vec<EpisodeRecord>, window: DateWindow, language_prefix: &str) -> ScopeOutcome {
    let prefix = language_prefix.trim().to_lowercase();
    let mut out = ScopeOutcome::default();
    for rec in episodes {
        let Some(date) = rec.episode.publication_date else {
            out.quarantined.push((rec, QuarantineReason::MissingDate));
            continue;
        };
        let lang = rec.episode.language.trim().to_lowercase();
        if lang.is_empty() {
            out.quarantined.push((rec, QuarantineReason::MissingLanguage));
        } else if !window.contains(date) {
            out.out_of_window.push(rec.episode.episode_id);
        } else if !lang.starts_with(&prefix) {
            out.language_mismatch.push(rec.episode.episode_id);
        } else {
            out.retained.push(rec);
        }
    }
    out
}
