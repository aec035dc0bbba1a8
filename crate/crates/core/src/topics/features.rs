use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::model::{Category, WordRecord};
use crate::stats::t_interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProsodicFeature {
    F0,
    F1,
    /// MFCC coefficient 1 to 4.
    Mfcc(u8),
}

impl ProsodicFeature {
    fn of(self, w: &WordRecord) -> Option<f64> {
        match self {
            ProsodicFeature::F0 => w.f0_mean,
            ProsodicFeature::F1 => w.f1_mean,
            ProsodicFeature::Mfcc(i) => w.mfcc_mean.and_then(|m| m.get(usize::from(i).checked_sub(1)?).copied()),
        }
    }

    pub fn name(self) -> String {
        match self {
            ProsodicFeature::F0 => "f0".into(),
            ProsodicFeature::F1 => "f1".into(),
            ProsodicFeature::Mfcc(i) => format!("mfcc{i}"),
        }
    }
}

/// Mean of the feature over the episode's words that carry prosody.
pub fn episode_feature_mean(words: &[WordRecord], feature: ProsodicFeature) -> Option<f64> {
    let vals: Vec<f64> = words.iter().filter_map(|w| feature.of(w)).collect();
    crate::stats::mean(&vals)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureRow {
    pub category: Category,
    pub episodes: usize,
    pub mean: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub wide: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct FeatureSummary {
    pub rows: Vec<FeatureRow>,
    /// Categories whose episodes carried no value for the feature.
    pub omitted: Vec<Category>,
}

/// Per-category mean of episode-level feature means with a t interval.
pub fn category_feature_summary(episodes: &[(Category, Option<f64>)]) -> FeatureSummary {
    let mut groups: BTreeMap<Category, Vec<f64>> = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for &(cat, value) in episodes {
        seen.insert(cat);
        if let Some(v) = value {
            groups.entry(cat).or_default().push(v);
        }
    }
    let rows = groups
        .iter()
        .filter_map(|(&category, vals)| {
            let iv = t_interval(vals, None, None)?;
            Some(FeatureRow {
                category,
                episodes: vals.len(),
                mean: iv.estimate,
                ci_low: iv.low,
                ci_high: iv.high,
                wide: iv.degenerate,
            })
        })
        .collect();
    let omitted = seen.into_iter().filter(|c| !groups.contains_key(c)).collect();
    FeatureSummary { rows, omitted }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Prosody;

    #[test]
    fn means_by_category() {
        let s = category_feature_summary(&[
            (Category::Kids, Some(10.0)),
            (Category::Kids, Some(12.0)),
            (Category::News, None),
        ]);
        assert_eq!(s.rows.len(), 1);
        assert_eq!(s.rows[0].mean, 11.0);
        assert!(s.rows[0].ci_low < 11.0 && s.rows[0].ci_high > 11.0);
        assert_eq!(s.omitted, vec![Category::News]);
    }

    #[test]
    fn episode_means() {
        let mut words =
            vec![WordRecord::new("a", 0.0, 1.0), WordRecord::new("b", 1.0, 2.0), WordRecord::new("c", 2.0, 3.0)];
        words[0].set_prosody(Some(Prosody { f0: 20.0, f1: 500.0, mfcc: [1.0, 2.0, 3.0, 4.0] }));
        words[2].set_prosody(Some(Prosody { f0: 30.0, f1: 700.0, mfcc: [3.0, 2.0, 1.0, 0.0] }));
        assert_eq!(episode_feature_mean(&words, ProsodicFeature::F0), Some(25.0));
        assert_eq!(episode_feature_mean(&words, ProsodicFeature::Mfcc(4)), Some(2.0));
        assert_eq!(episode_feature_mean(&words, ProsodicFeature::Mfcc(9)), None);
        assert_eq!(episode_feature_mean(&words[1..2], ProsodicFeature::F1), None);
    }
}
