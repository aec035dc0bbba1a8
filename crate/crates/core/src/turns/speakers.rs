use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{micros, overlap};
use crate::model::WordRecord;

/// Speakers below this share of total speaking time are treated as spurious.
pub const DEFAULT_MIN_SPEAKER_SHARE: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiarizationSegment {
    pub speaker: String,
    pub start_s: f64,
    pub end_s: f64,
}

impl DiarizationSegment {
    pub fn new(speaker: impl Into<String>, start_s: f64, end_s: f64) -> Self {
        DiarizationSegment { speaker: speaker.into(), start_s, end_s }
    }
}

struct Span<'a> {
    speaker: &'a str,
    start: i64,
    end: i64,
}

/// Picks the segment for one word among the segments touching it.
///
/// When two candidate segments are active at the same moment inside the word
/// (overlapping speech), the word goes to the speaker who started first.
/// Otherwise the segment with the largest overlap wins, ties going to the
/// earlier start and then to the smaller label.
fn choose<'a>(word: (i64, i64), candidates: &[&Span<'a>]) -> Option<&'a str> {
    let by_start = |a: &&&Span, b: &&&Span| a.start.cmp(&b.start).then(a.speaker.cmp(b.speaker));
    let concurrent: Vec<&&Span> = candidates
        .iter()
        .filter(|a| {
            candidates.iter().any(|b| {
                a.speaker != b.speaker && {
                    let lo = a.start.max(b.start).max(word.0);
                    let hi = a.end.min(b.end).min(word.1.max(word.0 + 1));
                    lo < hi
                }
            })
        })
        .collect();
    if let Some(first) = concurrent.iter().min_by(|a, b| by_start(a, b)) {
        return Some(first.speaker);
    }
    candidates
        .iter()
        .min_by(|a, b| {
            let oa = overlap((a.start, a.end), word);
            let ob = overlap((b.start, b.end), word);
            ob.cmp(&oa).then_with(|| by_start(a, b))
        })
        .map(|s| s.speaker)
}

/// Labels every word with the diarization speaker it overlaps; words in
/// silence get no label. Zero-length words are matched by containment.
pub fn assign_speakers(words: &mut [WordRecord], segments: &[DiarizationSegment]) {
    let mut spans: Vec<Span> = segments
        .iter()
        .map(|s| Span { speaker: s.speaker.as_str(), start: micros(s.start_s), end: micros(s.end_s) })
        .filter(|s| s.end > s.start)
        .collect();
    spans.sort_by(|a, b| a.start.cmp(&b.start).then(a.speaker.cmp(b.speaker)));
    let longest = spans.iter().map(|s| s.end - s.start).max().unwrap_or(0);

    for word in words.iter_mut() {
        let (ws, we) = (micros(word.start_s), micros(word.end_s));
        let point = we <= ws;
        let hi = spans.partition_point(|s| if point { s.start <= ws } else { s.start < we });
        let mut candidates = Vec::new();
        for s in spans[..hi].iter().rev() {
            if s.start + longest < ws {
                break;
            }
            let touches = if point { s.start <= ws && ws < s.end } else { overlap((s.start, s.end), (ws, we)) > 0 };
            if touches {
                candidates.push(s);
            }
        }
        word.speaker = choose((ws, we), &candidates).map(str::to_string);
    }
}

/// Per-speaker share of speaking time and the filter outcome.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SpeakerShares {
    pub shares: BTreeMap<String, f64>,
    pub retained: Vec<String>,
    pub removed: Vec<String>,
}

/// Removes labels of speakers whose summed word durations fall below
/// `min_share` of the total labeled speaking time (measured before filtering).
pub fn filter_minor_speakers(words: &mut [WordRecord], min_share: f64) -> SpeakerShares {
    let mut time: BTreeMap<String, i64> = BTreeMap::new();
    for w in words.iter() {
        if let Some(s) = &w.speaker {
            *time.entry(s.clone()).or_insert(0) += (micros(w.end_s) - micros(w.start_s)).max(0);
        }
    }
    let total: i64 = time.values().sum();
    let mut out = SpeakerShares::default();
    for (speaker, t) in &time {
        let share = if total > 0 { *t as f64 / total as f64 } else { 1.0 };
        out.shares.insert(speaker.clone(), share);
        if share < min_share {
            out.removed.push(speaker.clone());
        } else {
            out.retained.push(speaker.clone());
        }
    }
    for w in words.iter_mut() {
        if w.speaker.as_ref().is_some_and(|s| out.removed.contains(s)) {
            w.speaker = None;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn labels(words: &[WordRecord]) -> Vec<Option<&str>> {
        words.iter().map(|w| w.speaker.as_deref()).collect()
    }

    #[test]
    fn containment_and_silence() {
        let mut words = vec![WordRecord::new("a", 1.0, 1.5), WordRecord::new("b", 7.0, 7.5)];
        assign_speakers(&mut words, &[DiarizationSegment::new("S1", 0.0, 5.0)]);
        assert_eq!(labels(&words), vec![Some("S1"), None]);
    }

    #[test]
    fn concurrent_speech_goes_to_who_was_already_speaking() {
        let segs = [DiarizationSegment::new("A", 10.0, 15.0), DiarizationSegment::new("B", 12.0, 20.0)];
        // Inside the overlap, B even covers the whole word; A still wins.
        let mut words = vec![WordRecord::new("x", 12.5, 13.0), WordRecord::new("y", 14.8, 15.6)];
        assign_speakers(&mut words, &segs);
        assert_eq!(labels(&words), vec![Some("A"), Some("A")]);
        // After A stops, B.
        let mut later = vec![WordRecord::new("z", 16.0, 16.4)];
        assign_speakers(&mut later, &segs);
        assert_eq!(labels(&later), vec![Some("B")]);
    }

    #[test]
    fn handover_uses_largest_overlap() {
        let segs = [DiarizationSegment::new("A", 0.0, 5.0), DiarizationSegment::new("B", 5.0, 9.0)];
        let mut words =
            vec![WordRecord::new("x", 4.9, 5.3), WordRecord::new("y", 4.7, 5.1), WordRecord::new("t", 4.8, 5.2)];
        assign_speakers(&mut words, &segs);
        assert_eq!(labels(&words), vec![Some("B"), Some("A"), Some("A")]);
    }

    #[test]
    fn three_percent_speaker_dropped() {
        let mut words: Vec<WordRecord> =
            (0..97).map(|i| WordRecord::new("a", i as f64, i as f64 + 1.0).with_speaker("S1")).collect();
        words.extend((97..100).map(|i| WordRecord::new("b", i as f64, i as f64 + 1.0).with_speaker("S2")));
        let shares = filter_minor_speakers(&mut words, 0.05);
        assert_eq!(shares.removed, vec!["S2".to_string()]);
        assert_eq!(shares.retained, vec!["S1".to_string()]);
        assert!(words[97..].iter().all(|w| w.speaker.is_none()));
    }

    #[test]
    fn even_split_and_exact_threshold_retained() {
        let mut words =
            vec![WordRecord::new("a", 0.0, 1.0).with_speaker("A"), WordRecord::new("b", 1.0, 2.0).with_speaker("B")];
        assert_eq!(filter_minor_speakers(&mut words, 0.05).retained.len(), 2);

        let mut words =
            vec![WordRecord::new("a", 0.0, 19.0).with_speaker("A"), WordRecord::new("b", 19.0, 20.0).with_speaker("B")];
        let shares = filter_minor_speakers(&mut words, 0.05);
        assert_eq!(shares.shares["B"], 0.05);
        assert!(shares.removed.is_empty());
    }

    proptest! {
        #[test]
        fn filter_only_removes_labels(
            layout in prop::collection::vec((0u32..50, 1u32..30, prop::option::of(0u8..4)), 0..40),
            share in 0.0f64..0.6,
        ) {
            let mut t = 0u32;
            let mut words: Vec<WordRecord> = layout
                .iter()
                .map(|(gap, len, spk)| {
                    t += gap;
                    let w = WordRecord::new("w", t as f64 / 10.0, (t + len) as f64 / 10.0);
                    t += len;
                    match spk { Some(s) => w.with_speaker(format!("S{s}")), None => w }
                })
                .collect();
            let before = words.clone();
            filter_minor_speakers(&mut words, share);
            for (a, b) in before.iter().zip(&words) {
                prop_assert!(b.speaker.is_none() || b.speaker == a.speaker);
            }
        }
    }
}
