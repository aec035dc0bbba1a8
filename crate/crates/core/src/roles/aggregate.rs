use std::collections::HashMap;

use super::{CandidateMention, Prediction, RoleClassifier};
use crate::model::RoleAssignment;

/// Reduces the predictions for one name (in mention order) to the most
/// confident one. Ties go to the earliest mention. Returns `None` for an
/// empty slice.
pub fn aggregate_mentions(name: &str, source_episode: &str, predictions: &[Prediction]) -> Option<RoleAssignment> {
    let mut best: Option<&Prediction> = None;
    for p in predictions {
        if best.is_none_or(|b| p.confidence > b.confidence) {
            best = Some(p);
        }
    }
    best.map(|p| RoleAssignment {
        name: name.to_string(),
        label: p.label,
        confidence: p.confidence,
        source_episode: source_episode.to_string(),
    })
}

/// Classifies every mention and aggregates per name (case-insensitive).
/// Assignments come back in order of each name's first mention; names
/// the classifier has no opinion on are omitted.
pub fn infer_roles(
    episode_id: &str,
    mentions: &[CandidateMention],
    classifier: &dyn RoleClassifier,
) -> Vec<RoleAssignment> {
    let mut order: Vec<(String, Vec<Prediction>)> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for m in mentions {
        let key = m.name.to_lowercase();
        let slot = *index.entry(key).or_insert_with(|| {
            order.push((m.name.clone(), Vec::new()));
            order.len() - 1
        });
        if let Some(p) = classifier.classify(episode_id, m) {
            order[slot].1.push(p);
        }
    }
    order.iter().filter_map(|(name, preds)| aggregate_mentions(name, episode_id, preds)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RoleLabel;
    use crate::roles::{extract_candidates, CueClassifier, ExtractorConfig};
    use proptest::prelude::*;

    fn p(label: RoleLabel, confidence: f64) -> Prediction {
        Prediction { label, confidence }
    }

    #[test]
    fn max_rule_and_tie_break() {
        let a = aggregate_mentions("John Smith", "e", &[p(RoleLabel::Guest, 0.9), p(RoleLabel::Neither, 0.6)]).unwrap();
        assert_eq!((a.label, a.confidence), (RoleLabel::Guest, 0.9));
        let a = aggregate_mentions("Jane Doe", "e", &[p(RoleLabel::Host, 0.7), p(RoleLabel::Guest, 0.7)]).unwrap();
        assert_eq!((a.label, a.confidence), (RoleLabel::Host, 0.7));
        let a = aggregate_mentions("Jane Doe", "e", &[p(RoleLabel::Neither, 0.2)]).unwrap();
        assert_eq!((a.label, a.confidence), (RoleLabel::Neither, 0.2));
        assert!(aggregate_mentions("Jane Doe", "e", &[]).is_none());
    }

    #[test]
    fn infer_from_transcript() {
        let mut rec = crate::model::sample_record();
        rec.words = "Hi I'm your host Jane Doe and my guest today is John Smith . John Smith wrote a book"
            .split_whitespace()
            .enumerate()
            .map(|(i, t)| crate::model::WordRecord::new(t, i as f64, i as f64 + 0.5))
            .collect();
        rec.episode.description = "Jane Doe talks with John Smith.".into();
        rec.podcast.description = String::new();
        let mentions = extract_candidates(&rec, &ExtractorConfig::default());
        assert_eq!(mentions.len(), 5);
        let roles = infer_roles("p1.e1", &mentions, &CueClassifier::default());
        let got: Vec<_> = roles.iter().map(|r| (r.name.as_str(), r.label)).collect();
        assert_eq!(got, vec![("Jane Doe", RoleLabel::Host), ("John Smith", RoleLabel::Guest)]);
        assert!(roles.iter().all(|r| r.confidence == 0.9));
    }

    proptest! {
        #[test]
        fn output_is_max(confs in proptest::collection::vec(0.0f64..=1.0, 1..20)) {
            let preds: Vec<_> = confs.iter().map(|&c| p(RoleLabel::Guest, c)).collect();
            let a = aggregate_mentions("A B", "e", &preds).unwrap();
            prop_assert_eq!(a.confidence, confs.iter().cloned().fold(f64::MIN, f64::max));
        }
    }
}
