use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize, Serializer};

/// Rounds seconds to millisecond precision.
pub fn round_ms(seconds: f64) -> f64 {
    (seconds * 1000.0).round() / 1000.0
}

fn ser_ms<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_ms(*v))
}

/// Canonical category registry. Feeds whose category cannot be mapped are `Unknown`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    Arts,
    Business,
    Comedy,
    Education,
    Fiction,
    Government,
    Health,
    History,
    Kids,
    Leisure,
    Music,
    News,
    Religion,
    Science,
    Society,
    Sports,
    Technology,
    TrueCrime,
    Tv,
    Unknown,
}

impl Category {
    pub const ALL: [Category; 20] = [
        Category::Arts,
        Category::Business,
        Category::Comedy,
        Category::Education,
        Category::Fiction,
        Category::Government,
        Category::Health,
        Category::History,
        Category::Kids,
        Category::Leisure,
        Category::Music,
        Category::News,
        Category::Religion,
        Category::Science,
        Category::Society,
        Category::Sports,
        Category::Technology,
        Category::TrueCrime,
        Category::Tv,
        Category::Unknown,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Arts => "arts",
            Category::Business => "business",
            Category::Comedy => "comedy",
            Category::Education => "education",
            Category::Fiction => "fiction",
            Category::Government => "government",
            Category::Health => "health",
            Category::History => "history",
            Category::Kids => "kids",
            Category::Leisure => "leisure",
            Category::Music => "music",
            Category::News => "news",
            Category::Religion => "religion",
            Category::Science => "science",
            Category::Society => "society",
            Category::Sports => "sports",
            Category::Technology => "technology",
            Category::TrueCrime => "true-crime",
            Category::Tv => "tv",
            Category::Unknown => "unknown",
        }
    }

    /// Maps an iTunes top-level category label ("Society & Culture",
    /// "Kids & Family", ...) or a canonical tag onto the registry.
    pub fn from_label(label: &str) -> Category {
        let l = label.trim().to_lowercase();
        if let Ok(c) = l.parse() {
            return c;
        }
        let first = l.split(['&', ',', '/']).next().unwrap_or("").trim();
        match first {
            "arts" => Category::Arts,
            "business" => Category::Business,
            "comedy" => Category::Comedy,
            "education" => Category::Education,
            "fiction" => Category::Fiction,
            "government" => Category::Government,
            "health" => Category::Health,
            "history" => Category::History,
            "kids" => Category::Kids,
            "leisure" | "games" | "hobbies" => Category::Leisure,
            "music" => Category::Music,
            "news" => Category::News,
            "religion" | "spirituality" => Category::Religion,
            "science" => Category::Science,
            "society" => Category::Society,
            "sports" => Category::Sports,
            "technology" => Category::Technology,
            "true crime" => Category::TrueCrime,
            "tv" => Category::Tv,
            _ => Category::Unknown,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::ALL.iter().copied().find(|c| c.as_str() == s).ok_or_else(|| format!("unknown category tag {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PodcastMeta {
    pub podcast_id: String,
    pub title: String,
    pub category: Category,
    pub hosting_platform: String,
    pub feed_url: String,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeMeta {
    pub episode_id: String,
    pub podcast_id: String,
    pub title: String,
    pub description: String,
    /// Calendar date in UTC; absent when the feed date was missing or unparseable.
    pub publication_date: Option<NaiveDate>,
    pub duration_s: Option<u64>,
    pub language: String,
}

/// Per-word or per-turn prosodic means.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prosody {
    /// Semitones above A0.
    pub f0: f64,
    /// Hz.
    pub f1: f64,
    pub mfcc: [f64; 4],
}

impl Prosody {
    pub fn is_finite(&self) -> bool {
        self.f0.is_finite() && self.f1.is_finite() && self.mfcc.iter().all(|v| v.is_finite())
    }

    /// Component-wise mean; `None` for an empty input.
    pub fn mean<'a, I: IntoIterator<Item = &'a Prosody>>(items: I) -> Option<Prosody> {
        let mut n = 0usize;
        let mut acc = Prosody { f0: 0.0, f1: 0.0, mfcc: [0.0; 4] };
        for p in items {
            n += 1;
            acc.f0 += p.f0;
            acc.f1 += p.f1;
            for (a, v) in acc.mfcc.iter_mut().zip(p.mfcc) {
                *a += v;
            }
        }
        if n == 0 {
            return None;
        }
        let n = n as f64;
        Some(Prosody { f0: acc.f0 / n, f1: acc.f1 / n, mfcc: acc.mfcc.map(|v| v / n) })
    }
}

/// One transcribed token.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordRecord {
    pub token: String,
    #[serde(serialize_with = "ser_ms")]
    pub start_s: f64,
    #[serde(serialize_with = "ser_ms")]
    pub end_s: f64,
    #[serde(default)]
    pub f0_mean: Option<f64>,
    #[serde(default)]
    pub f1_mean: Option<f64>,
    #[serde(default)]
    pub mfcc_mean: Option<[f64; 4]>,
    #[serde(default)]
    pub speaker: Option<String>,
}

impl WordRecord {
    pub fn new(token: impl Into<String>, start_s: f64, end_s: f64) -> Self {
        WordRecord { token: token.into(), start_s, end_s, f0_mean: None, f1_mean: None, mfcc_mean: None, speaker: None }
    }

    pub fn with_speaker(mut self, speaker: impl Into<String>) -> Self {
        self.speaker = Some(speaker.into());
        self
    }

    pub fn duration(&self) -> f64 {
        (self.end_s - self.start_s).max(0.0)
    }

    /// The word's prosody when all three fields are present.
    pub fn prosody(&self) -> Option<Prosody> {
        match (self.f0_mean, self.f1_mean, self.mfcc_mean) {
            (Some(f0), Some(f1), Some(mfcc)) => Some(Prosody { f0, f1, mfcc }),
            _ => None,
        }
    }

    pub fn set_prosody(&mut self, p: Option<Prosody>) {
        self.f0_mean = p.map(|p| p.f0);
        self.f1_mean = p.map(|p| p.f1);
        self.mfcc_mean = p.map(|p| p.mfcc);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TurnRole {
    Host,
    Guest,
    Unknown,
}

/// A maximal run of words by one speaker.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Turn {
    pub episode_id: String,
    /// `<episode_id>#<turn_id>`, the key back to the episode-level record.
    pub turn_key: String,
    pub turn_id: usize,
    pub speaker: String,
    pub role: TurnRole,
    pub speaker_name: Option<String>,
    pub text: String,
    #[serde(serialize_with = "ser_ms")]
    pub start_s: f64,
    #[serde(serialize_with = "ser_ms")]
    pub end_s: f64,
    pub prosody: Option<Prosody>,
    /// Indices of member words in the episode transcript.
    pub word_indices: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RoleLabel {
    Host,
    Guest,
    Neither,
}

impl RoleLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RoleLabel::Host => "Host",
            RoleLabel::Guest => "Guest",
            RoleLabel::Neither => "Neither",
        }
    }
}

impl FromStr for RoleLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_lowercase().as_str() {
            "host" => Ok(RoleLabel::Host),
            "guest" => Ok(RoleLabel::Guest),
            "neither" => Ok(RoleLabel::Neither),
            other => Err(format!("unknown role label {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoleAssignment {
    pub name: String,
    pub label: RoleLabel,
    pub confidence: f64,
    pub source_episode: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeTopics {
    pub episode_id: String,
    pub theta: Vec<f64>,
}

/// Outcome of the 4-gram repetition check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepetitionScore {
    pub max_fourgram_count: usize,
    pub total_fourgrams: usize,
    /// `max / total`, defined as 0 when there are no 4-grams.
    pub ratio: f64,
}

impl RepetitionScore {
    pub fn new(max_fourgram_count: usize, total_fourgrams: usize) -> Self {
        let ratio = if total_fourgrams == 0 { 0.0 } else { max_fourgram_count as f64 / total_fourgrams as f64 };
        RepetitionScore { max_fourgram_count, total_fourgrams, ratio }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub repetition: Option<RepetitionScore>,
    pub removed: bool,
    pub trimmed_tail_words: usize,
}

/// Episode-level release record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeRecord {
    pub podcast: PodcastMeta,
    pub episode: EpisodeMeta,
    #[serde(default)]
    pub words: Vec<WordRecord>,
    #[serde(default)]
    pub quality: QualityReport,
    /// Processing flags raised by any stage (e.g. `missing-date`).
    #[serde(default)]
    pub flags: Vec<String>,
    /// Speakers retained after the minor-speaker filter; absent when not diarized.
    #[serde(default)]
    pub speaker_count: Option<usize>,
    #[serde(default)]
    pub host_speaker: Option<String>,
    #[serde(default)]
    pub roles: Vec<RoleAssignment>,
    #[serde(default)]
    pub topics: Option<EpisodeTopics>,
}

impl EpisodeRecord {
    pub fn new(podcast: PodcastMeta, episode: EpisodeMeta) -> Self {
        EpisodeRecord {
            podcast,
            episode,
            words: Vec::new(),
            quality: QualityReport::default(),
            flags: Vec::new(),
            speaker_count: None,
            host_speaker: None,
            roles: Vec::new(),
            topics: None,
        }
    }

    pub fn id(&self) -> &str {
        &self.episode.episode_id
    }

    /// Adds a flag once, keeping flags sorted.
    pub fn flag(&mut self, flag: impl Into<String>) {
        let flag = flag.into();
        if let Err(pos) = self.flags.binary_search(&flag) {
            self.flags.insert(pos, flag);
        }
    }

    pub fn transcript_text(&self) -> String {
        self.words.iter().map(|w| w.token.trim()).filter(|t| !t.is_empty()).collect::<Vec<_>>().join(" ")
    }
}
