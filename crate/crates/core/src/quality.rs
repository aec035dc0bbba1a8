//! Transcript quality filters: 4-gram repetition and hallucinated tails.
//!
//! ASR output sometimes loops on a phrase during silence or music. An episode
//! is removed when one 4-gram accounts for more than `threshold` of all
//! 4-grams in its transcript. Words timestamped past the end of the audio are
//! trimmed.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::model::{EpisodeRecord, RepetitionScore, WordRecord};
use crate::text::normalize_all;

/// Default share above which an episode is considered repetitive.
pub const DEFAULT_FOURGRAM_THRESHOLD: f64 = 0.05;

/// Scores the most frequent contiguous 4-gram in `tokens`.
///
/// Tokens are compared as given; use [`transcript_tokens`] to normalize first.
pub fn fourgram_repetition_score<S: AsRef<str>>(tokens: &[S]) -> RepetitionScore {
    if tokens.len() < 4 {
        return RepetitionScore::new(0, 0);
    }
    let mut counts: HashMap<[&str; 4], usize> = HashMap::with_capacity(tokens.len());
    let mut max = 0;
    for w in tokens.windows(4) {
        let key = [w[0].as_ref(), w[1].as_ref(), w[2].as_ref(), w[3].as_ref()];
        let c = counts.entry(key).or_insert(0);
        *c += 1;
        max = max.max(*c);
    }
    RepetitionScore::new(max, tokens.len() - 3)
}

/// Lowercased, edge-punctuation-stripped tokens of an episode transcript.
/// Non-speech tags such as `[MUSIC]` are kept as ordinary tokens.
pub fn transcript_tokens(words: &[WordRecord]) -> Vec<String> {
    normalize_all(words.iter().map(|w| w.token.as_str()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Keep,
    Remove,
}

/// `Remove` iff the score's ratio is strictly above `threshold`.
pub fn repetition_decision(score: &RepetitionScore, threshold: f64) -> Decision {
    if score.ratio > threshold {
        Decision::Remove
    } else {
        Decision::Keep
    }
}

/// Scores the episode transcript and records the outcome on the record.
pub fn filter_repetitive(episode: &mut EpisodeRecord, threshold: f64) -> Decision {
    let score = fourgram_repetition_score(&transcript_tokens(&episode.words));
    let decision = repetition_decision(&score, threshold);
    episode.quality.repetition = Some(score);
    episode.quality.removed = decision == Decision::Remove;
    decision
}

/// Drops every word starting after the end of the audio. Returns the kept
/// words and the number dropped.
pub fn trim_hallucinated_tail(words: Vec<WordRecord>, audio_duration_s: f64) -> (Vec<WordRecord>, usize) {
    let before = words.len();
    let kept: Vec<WordRecord> = words.into_iter().filter(|w| w.start_s <= audio_duration_s).collect();
    let dropped = before - kept.len();
    (kept, dropped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: compare every window against every other window.
    fn brute_force(tokens: &[&str]) -> (usize, usize) {
        if tokens.len() < 4 {
            return (0, 0);
        }
        let n = tokens.len() - 3;
        let max = (0..n).map(|i| (0..n).filter(|&j| tokens[i..i + 4] == tokens[j..j + 4]).count()).max().unwrap();
        (max, n)
    }

    #[test]
    fn too_short() {
        let s = fourgram_repetition_score(&["a", "b", "c"]);
        assert_eq!((s.total_fourgrams, s.ratio), (0, 0.0));
    }

    #[test]
    fn five_distinct_tokens() {
        let s = fourgram_repetition_score(&["a", "b", "c", "d", "e"]);
        assert_eq!((s.max_fourgram_count, s.total_fourgrams), (1, 2));
        assert_eq!(s.ratio, 0.5);
    }

    #[test]
    fn repeated_phrase() {
        let tokens: Vec<&str> = ["a", "b", "c", "d"].iter().copied().cycle().take(40).collect();
        assert_eq!(brute_force(&tokens), (10, 37));
        let s = fourgram_repetition_score(&tokens);
        assert_eq!((s.max_fourgram_count, s.total_fourgrams), (10, 37));
        assert!((s.ratio - 10.0 / 37.0).abs() < 1e-15);
        assert!((s.ratio - 0.270).abs() < 1e-3);
        assert_eq!(repetition_decision(&s, DEFAULT_FOURGRAM_THRESHOLD), Decision::Remove);
    }

    #[test]
    fn threshold_is_strict() {
        let s = RepetitionScore::new(1, 20);
        assert_eq!(s.ratio, 0.05);
        assert_eq!(repetition_decision(&s, 0.05), Decision::Keep);
        assert_eq!(repetition_decision(&RepetitionScore::new(0, 0), 0.05), Decision::Keep);
    }

    #[test]
    fn decision_is_recorded() {
        let mut rec = crate::model::sample_record();
        rec.words = ["hey", "you", "there", "hey", "you", "there"]
            .iter()
            .cycle()
            .take(60)
            .enumerate()
            .map(|(i, t)| WordRecord::new(*t, i as f64, i as f64 + 0.5))
            .collect();
        assert_eq!(filter_repetitive(&mut rec, 0.05), Decision::Remove);
        assert!(rec.quality.removed);
        assert!(rec.quality.repetition.unwrap().ratio > 0.3);
    }

    #[test]
    fn normalization_folds_case_and_punctuation() {
        let words: Vec<WordRecord> =
            ["Thank", "you.", "THANK", "you!", "[MUSIC]"].iter().map(|t| WordRecord::new(*t, 0.0, 0.0)).collect();
        assert_eq!(transcript_tokens(&words), vec!["thank", "you", "thank", "you", "music"]);
    }

    #[test]
    fn tail_trimming() {
        let words: Vec<WordRecord> = (0..10).map(|i| WordRecord::new("w", i as f64, i as f64 + 0.5)).collect();
        let (kept, dropped) = trim_hallucinated_tail(words.clone(), 20.0);
        assert_eq!((kept.len(), dropped), (10, 0));
        let (kept, dropped) = trim_hallucinated_tail(words, 4.5);
        assert_eq!((kept.len(), dropped), (5, 5));
        assert_eq!(trim_hallucinated_tail(Vec::new(), 1.0), (Vec::new(), 0));
    }

    proptest! {
        #[test]
        fn matches_brute_force(tokens in prop::collection::vec(prop::sample::select(vec!["a", "b", "c"]), 0..40)) {
            let s = fourgram_repetition_score(&tokens);
            prop_assert_eq!((s.max_fourgram_count, s.total_fourgrams), brute_force(&tokens));
            prop_assert!((0.0..=1.0).contains(&s.ratio));
            if s.total_fourgrams > 0 {
                prop_assert!((s.ratio * s.total_fourgrams as f64 - s.max_fourgram_count as f64).abs() < 1e-9);
            }
        }

        #[test]
        fn distinct_fourgrams_give_reciprocal(n in 4usize..300) {
            let tokens: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
            let s = fourgram_repetition_score(&tokens);
            prop_assert_eq!(s.ratio, 1.0 / (n - 3) as f64);
        }

        #[test]
        fn monotone_in_threshold(max in 0usize..50, extra in 0usize..50, lo in 0.0f64..1.0, bump in 0.0f64..1.0) {
            let s = RepetitionScore::new(max, max + extra);
            if repetition_decision(&s, lo) == Decision::Keep {
                prop_assert_eq!(repetition_decision(&s, lo + bump), Decision::Keep);
            }
        }

        #[test]
        fn trimmed_is_prefix(starts in prop::collection::vec(0u32..1000, 0..50), dur in 1u32..1000) {
            let mut starts = starts;
            starts.sort_unstable();
            let words: Vec<WordRecord> = starts.iter().map(|s| WordRecord::new("w", *s as f64 / 10.0, *s as f64 / 10.0)).collect();
            let (kept, dropped) = trim_hallucinated_tail(words.clone(), dur as f64 / 10.0);
            prop_assert_eq!(kept.len() + dropped, words.len());
            prop_assert_eq!(&kept[..], &words[..kept.len()]);
        }
    }
}
