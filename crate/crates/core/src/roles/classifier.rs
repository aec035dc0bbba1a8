use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CandidateMention, RolesError};
use crate::model::RoleLabel;
use crate::text::normalize_token;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub label: RoleLabel,
    pub confidence: f64,
}

/// Labels one name mention. `None` means the classifier has no opinion
/// (e.g. a replayed prediction table with no row for this mention).
pub trait RoleClassifier: Sync {
    fn classify(&self, episode_id: &str, mention: &CandidateMention) -> Option<Prediction>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CueSide {
    /// The phrase precedes the name ("my guest today is <name>").
    Before,
    /// The phrase follows the name ("<name> joins us").
    After,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CueStrength {
    Direct,
    Weak,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuePattern {
    pub phrase: String,
    pub side: CueSide,
    #[serde(default = "direct")]
    pub strength: CueStrength,
    /// Words allowed between the phrase and the name.
    #[serde(default)]
    pub max_gap: usize,
}

fn direct() -> CueStrength {
    CueStrength::Direct
}

/// Cue-phrase rules for the baseline classifier.
///
/// The nearest matching cue wins; at equal distance direct cues beat weak
/// ones and host cues beat guest cues. With no match the mention is
/// `Neither` at `default_confidence`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CueConfig {
    pub host: Vec<CuePattern>,
    pub guest: Vec<CuePattern>,
    pub direct_confidence: f64,
    pub weak_confidence: f64,
    pub default_confidence: f64,
}

fn cue(phrase: &str, side: CueSide, strength: CueStrength, max_gap: usize) -> CuePattern {
    CuePattern { phrase: phrase.into(), side, strength, max_gap }
}

impl Default for CueConfig {
    fn default() -> Self {
        use CueSide::*;
        use CueStrength::*;
        CueConfig {
            host: vec![
                cue("your host", Before, Direct, 1),
                cue("your hosts", Before, Direct, 1),
                cue("hosted by", Before, Direct, 0),
                cue("i'm", Before, Direct, 0),
                cue("i am", Before, Direct, 0),
                cue("my name is", Before, Direct, 0),
                cue("your host", After, Direct, 0),
                cue("and this is", After, Direct, 0),
                cue("here with", After, Weak, 0),
                cue("host", Before, Weak, 0),
                cue("co-host", Before, Weak, 1),
                cue("this is", Before, Weak, 0),
            ],
            guest: vec![
                cue("my guest", Before, Direct, 2),
                cue("our guest", Before, Direct, 2),
                cue("my guests", Before, Direct, 2),
                cue("our guests", Before, Direct, 2),
                cue("joining us", Before, Direct, 2),
                cue("joining me", Before, Direct, 2),
                cue("joined by", Before, Direct, 2),
                cue("please welcome", Before, Direct, 0),
                cue("welcome to the show", Before, Direct, 0),
                cue("welcome to the podcast", Before, Direct, 0),
                cue("interview with", Before, Direct, 1),
                cue("interviews", Before, Direct, 0),
                cue("interviewed", Before, Direct, 0),
                cue("joins us", After, Direct, 0),
                cue("joins me", After, Direct, 0),
                cue("is joining us", After, Direct, 0),
                cue("is my guest", After, Direct, 0),
                cue("is our guest", After, Direct, 0),
                cue("welcome to the show", After, Direct, 0),
                cue("thanks for coming on", After, Direct, 0),
                cue("thank you for joining", After, Direct, 0),
                cue("thanks for joining", After, Direct, 0),
                cue("guest", Before, Weak, 2),
                cue("welcome", Before, Weak, 0),
                cue("conversation with", Before, Weak, 1),
                cue("talk with", Before, Weak, 1),
                cue("talk to", Before, Weak, 1),
                cue("speak with", Before, Weak, 1),
                cue("chat with", Before, Weak, 1),
                cue("sits down with", Before, Weak, 0),
                cue("sat down with", Before, Weak, 0),
            ],
            direct_confidence: 0.9,
            weak_confidence: 0.6,
            default_confidence: 0.5,
        }
    }
}

impl CueConfig {
    pub fn from_toml(text: &str) -> Result<Self, RolesError> {
        let cfg: CueConfig = toml::from_str(text).map_err(|e| RolesError::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn check(&self) -> Result<(), RolesError> {
        for (what, c) in [
            ("direct_confidence", self.direct_confidence),
            ("weak_confidence", self.weak_confidence),
            ("default_confidence", self.default_confidence),
        ] {
            if !(0.0..=1.0).contains(&c) {
                return Err(RolesError::Config(format!("{what} = {c} is not a probability")));
            }
        }
        for p in self.host.iter().chain(&self.guest) {
            if p.phrase.split_whitespace().next().is_none() {
                return Err(RolesError::Config("empty cue phrase".into()));
            }
        }
        Ok(())
    }
}

struct CompiledCue {
    tokens: Vec<String>,
    side: CueSide,
    strength: CueStrength,
    max_gap: usize,
    label: RoleLabel,
}

/// (gap, strength, host-first, rule order); smaller is better.
type MatchKey = (usize, CueStrength, u8, usize);

/// Rule-based classifier driven by a [`CueConfig`].
pub struct CueClassifier {
    config: CueConfig,
    cues: Vec<CompiledCue>,
}

fn norm_words(text: &str) -> Vec<String> {
    text.split_whitespace().map(|w| normalize_token(w).unwrap_or_default()).collect()
}

impl CueClassifier {
    pub fn new(config: CueConfig) -> Self {
        let compile = |p: &CuePattern, label| CompiledCue {
            tokens: norm_words(&p.phrase),
            side: p.side,
            strength: p.strength,
            max_gap: p.max_gap,
            label,
        };
        let cues = config
            .host
            .iter()
            .map(|p| compile(p, RoleLabel::Host))
            .chain(config.guest.iter().map(|p| compile(p, RoleLabel::Guest)))
            .collect();
        CueClassifier { config, cues }
    }

    pub fn config(&self) -> &CueConfig {
        &self.config
    }

    /// Classifies a mention from its context alone.
    pub fn predict(&self, mention: &CandidateMention) -> Prediction {
        let words = norm_words(&mention.context);
        let at = mention.context_name_index.min(words.len());
        let left = &words[..at];
        let right = &words[(at + 2).min(words.len())..];
        let mut best: Option<(MatchKey, &CompiledCue)> = None;
        for (order, c) in self.cues.iter().enumerate() {
            let k = c.tokens.len();
            let hit = (0..=c.max_gap).find(|&g| match c.side {
                CueSide::Before => left.len() >= g + k && left[left.len() - g - k..left.len() - g] == c.tokens[..],
                CueSide::After => right.len() >= g + k && right[g..g + k] == c.tokens[..],
            });
            if let Some(g) = hit {
                let key = (g, c.strength, u8::from(c.label != RoleLabel::Host), order);
                if best.as_ref().is_none_or(|(b, _)| key < *b) {
                    best = Some((key, c));
                }
            }
        }
        match best {
            Some((_, c)) => Prediction {
                label: c.label,
                confidence: match c.strength {
                    CueStrength::Direct => self.config.direct_confidence,
                    CueStrength::Weak => self.config.weak_confidence,
                },
            },
            None => Prediction { label: RoleLabel::Neither, confidence: self.config.default_confidence },
        }
    }
}

impl Default for CueClassifier {
    fn default() -> Self {
        CueClassifier::new(CueConfig::default())
    }
}

impl RoleClassifier for CueClassifier {
    fn classify(&self, _episode_id: &str, mention: &CandidateMention) -> Option<Prediction> {
        Some(self.predict(mention))
    }
}

/// Replays precomputed predictions keyed by episode and case-folded name.
#[derive(Debug, Clone, Default)]
pub struct FileClassifier {
    table: HashMap<(String, String), Prediction>,
}

impl FileClassifier {
    pub fn from_path(path: &Path) -> Result<Self, RolesError> {
        Ok(FileClassifier { table: load_predictions_csv(path)? })
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

impl RoleClassifier for FileClassifier {
    fn classify(&self, episode_id: &str, mention: &CandidateMention) -> Option<Prediction> {
        self.table.get(&(episode_id.to_string(), mention.name.to_lowercase())).copied()
    }
}

#[derive(Deserialize)]
struct PredictionRow {
    episode_id: String,
    name: String,
    label: String,
    confidence: f64,
}

/// Reads `episode_id,name,label,confidence` rows. A repeated
/// (episode, name) key keeps the higher-confidence row.
pub fn load_predictions_csv(path: &Path) -> Result<HashMap<(String, String), Prediction>, RolesError> {
    let io = |source| RolesError::Io { path: path.to_path_buf(), source };
    let file = std::fs::File::open(path).map_err(io)?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let mut table: HashMap<(String, String), Prediction> = HashMap::new();
    for (i, row) in reader.deserialize::<PredictionRow>().enumerate() {
        let bad = |message: String| RolesError::Row { path: path.to_path_buf(), row: i + 1, message };
        let row = row.map_err(|e| bad(e.to_string()))?;
        let label: RoleLabel = row.label.parse().map_err(|_| bad(format!("unknown label {:?}", row.label)))?;
        if !(0.0..=1.0).contains(&row.confidence) {
            return Err(bad(format!("confidence {} outside [0, 1]", row.confidence)));
        }
        if row.name.split_whitespace().count() != 2 {
            return Err(bad(format!("name {:?} is not two tokens", row.name)));
        }
        let key = (row.episode_id, row.name.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase());
        let pred = Prediction { label, confidence: row.confidence };
        table
            .entry(key)
            .and_modify(|p| {
                if pred.confidence > p.confidence {
                    *p = pred
                }
            })
            .or_insert(pred);
    }
    Ok(table)
}
