use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{EpisodeRecord, Turn};

/// One violated invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub invariant: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.invariant, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when some violation names `invariant`.
    pub fn contains(&self, invariant: &str) -> bool {
        self.violations.iter().any(|v| v.invariant == invariant)
    }

    fn push(&mut self, invariant: &'static str, detail: impl Into<String>) {
        self.violations.push(Violation { invariant, detail: detail.into() });
    }
}

const TOPIC_SUM_TOLERANCE: f64 = 1e-9;

/// Checks every per-record invariant. Never fails: violations are returned as data.
pub fn validate_episode(record: &EpisodeRecord) -> ValidationReport {
    let mut report = ValidationReport::default();
    let ep = &record.episode;

    if record.podcast.podcast_id.trim().is_empty() {
        report.push("podcast id", "podcast_id is empty");
    }
    if ep.episode_id.trim().is_empty() {
        report.push("episode id", "episode_id is empty");
    }
    if ep.podcast_id != record.podcast.podcast_id {
        report.push(
            "podcast key",
            format!("episode points at {:?} but carries podcast {:?}", ep.podcast_id, record.podcast.podcast_id),
        );
    }
    if ep.publication_date.is_none() {
        report.push("publication date", "publication_date is absent");
    }

    let mut prev_start = f64::NEG_INFINITY;
    for (i, w) in record.words.iter().enumerate() {
        if !w.start_s.is_finite() || !w.end_s.is_finite() {
            report.push("finite values", format!("word {i} has a non-finite time"));
            continue;
        }
        if w.start_s < 0.0 {
            report.push("word time order", format!("word {i} starts before 0"));
        }
        if w.end_s < w.start_s {
            report.push("word time order", format!("word {i} ends ({}) before it starts ({})", w.end_s, w.start_s));
        }
        if w.start_s < prev_start {
            report.push("word start order", format!("word {i} starts before word {}", i - 1));
        }
        prev_start = w.start_s;

        let present = [w.f0_mean.is_some(), w.f1_mean.is_some(), w.mfcc_mean.is_some()];
        if present.iter().any(|p| *p) && !present.iter().all(|p| *p) {
            report.push("prosody completeness", format!("word {i} has partial prosody"));
        }
        if let Some(p) = w.prosody() {
            if !p.is_finite() {
                report.push("finite values", format!("word {i} has non-finite prosody"));
            }
        }
    }

    for r in &record.roles {
        if r.name.split_whitespace().count() != 2 {
            report.push("role name tokens", format!("{:?} is not a two-token name", r.name));
        }
        if !(0.0..=1.0).contains(&r.confidence) {
            report.push("role confidence", format!("{:?} has confidence {}", r.name, r.confidence));
        }
        if r.source_episode != ep.episode_id {
            report.push("role episode key", format!("{:?} points at {:?}", r.name, r.source_episode));
        }
    }

    if let Some(t) = &record.topics {
        if t.episode_id != ep.episode_id {
            report.push("topic episode key", format!("theta points at {:?}", t.episode_id));
        }
        if t.theta.iter().any(|v| !v.is_finite() || *v < 0.0) {
            report.push("topic non-negativity", "theta has a negative or non-finite entry");
        }
        let sum: f64 = t.theta.iter().sum();
        if (sum - 1.0).abs() > TOPIC_SUM_TOLERANCE {
            report.push("topic normalization", format!("theta sums to {sum}"));
        }
    }

    if let Some(score) = &record.quality.repetition {
        if score.max_fourgram_count > score.total_fourgrams || !(0.0..=1.0).contains(&score.ratio) {
            report.push("repetition score", format!("{score:?} is inconsistent"));
        }
    }
    report
}

/// Checks turn-level invariants for one episode's turns.
pub fn validate_turns(turns: &[Turn]) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (i, t) in turns.iter().enumerate() {
        if t.text.trim().is_empty() {
            report.push("turn text", format!("turn {i} is empty"));
        }
        if t.end_s < t.start_s {
            report.push("turn time order", format!("turn {i} ends before it starts"));
        }
        if i > 0 {
            let prev = &turns[i - 1];
            if t.start_s < prev.start_s {
                report.push("turn order", format!("turn {i} starts before turn {}", i - 1));
            }
            if t.speaker == prev.speaker {
                report
                    .push("turn speaker alternation", format!("turns {} and {i} share speaker {:?}", i - 1, t.speaker));
            }
        }
    }
    report
}

/// Cross-record invariants: unique episode ids and consistent podcast metadata.
pub fn validate_corpus(records: &[EpisodeRecord]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut seen = BTreeSet::new();
    let mut podcasts = BTreeMap::new();
    for r in records {
        if !seen.insert(r.episode.episode_id.as_str()) {
            report.push("episode id uniqueness", format!("{:?} appears more than once", r.episode.episode_id));
        }
        match podcasts.get(r.podcast.podcast_id.as_str()) {
            Some(prev) if *prev != &r.podcast => {
                report.push("podcast id uniqueness", format!("{:?} has conflicting metadata", r.podcast.podcast_id))
            }
            Some(_) => {}
            None => {
                podcasts.insert(r.podcast.podcast_id.as_str(), &r.podcast);
            }
        }
    }
    report
}
