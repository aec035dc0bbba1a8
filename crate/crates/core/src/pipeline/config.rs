use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{PipelineError, Stage};
use crate::network::BipartiteConfig;
use crate::topics::{LdaConfig, SeriesMeasure};

/// Input locations. Relative paths resolve against the config file's
/// directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PathsConfig {
    /// CSV of `podcast_id,feed_path[,feed_url]`.
    pub manifest: Option<PathBuf>,
    /// Directory of `<episode_id>.jsonl` word-level transcripts.
    pub transcripts: Option<PathBuf>,
    /// Directory of `<episode_id>.csv` prosodic frames.
    pub frames: Option<PathBuf>,
    /// Directory of `<episode_id>.csv` diarization segments.
    pub diarization: Option<PathBuf>,
    /// Stage outputs go to `<work>/<stage>/`.
    pub work: PathBuf,
}

impl Default for PathsConfig {
    fn default() -> Self {
        PathsConfig { manifest: None, transcripts: None, frames: None, diarization: None, work: PathBuf::from("out") }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScopeConfig {
    pub start: NaiveDate,
    pub end: NaiveDate,
    pub language_prefix: String,
}

impl Default for ScopeConfig {
    fn default() -> Self {
        ScopeConfig {
            start: NaiveDate::from_ymd_opt(2020, 5, 1).expect("valid date"),
            end: NaiveDate::from_ymd_opt(2020, 6, 30).expect("valid date"),
            language_prefix: "en".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CleanConfig {
    pub fourgram_threshold: f64,
}

impl Default for CleanConfig {
    fn default() -> Self {
        CleanConfig { fourgram_threshold: crate::quality::DEFAULT_FOURGRAM_THRESHOLD }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TurnsConfig {
    pub min_speaker_share: f64,
}

impl Default for TurnsConfig {
    fn default() -> Self {
        TurnsConfig { min_speaker_share: crate::turns::DEFAULT_MIN_SPEAKER_SHARE }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RolesConfig {
    /// `baseline` or `file:<path>` with `episode_id,name,label,confidence`.
    pub classifier: String,
    /// Optional TOML file overriding the baseline cue phrases.
    pub cues: Option<PathBuf>,
}

impl Default for RolesConfig {
    fn default() -> Self {
        RolesConfig { classifier: "baseline".into(), cues: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TopicsConfig {
    pub k: usize,
    pub alpha: Option<f64>,
    pub beta: f64,
    pub iterations: usize,
    pub seed: u64,
    pub top_words: usize,
}

impl Default for TopicsConfig {
    fn default() -> Self {
        let lda = LdaConfig::default();
        TopicsConfig {
            k: lda.k,
            alpha: lda.alpha,
            beta: lda.beta,
            iterations: lda.iterations,
            seed: lda.seed,
            top_words: 10,
        }
    }
}

impl TopicsConfig {
    pub fn lda(&self) -> LdaConfig {
        LdaConfig { k: self.k, alpha: self.alpha, beta: self.beta, iterations: self.iterations, seed: self.seed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SeriesConfig {
    /// Topic ids whose combined mass is tracked.
    pub topics: Vec<usize>,
    pub window_days: usize,
    /// When set, the daily value is the percent of episodes with mass on
    /// the topics at or above this threshold instead of the mean mass.
    pub share_threshold: Option<f64>,
    pub phrases: Vec<String>,
    pub per_category: bool,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            topics: Vec::new(),
            window_days: 3,
            share_threshold: None,
            phrases: Vec::new(),
            per_category: true,
        }
    }
}

impl SeriesConfig {
    pub fn measure(&self) -> SeriesMeasure {
        match self.share_threshold {
            Some(t) => SeriesMeasure::ShareAbove(t),
            None => SeriesMeasure::ThetaMass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { workers: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub paths: PathsConfig,
    pub scope: ScopeConfig,
    pub clean: CleanConfig,
    pub turns: TurnsConfig,
    pub roles: RolesConfig,
    pub network: BipartiteConfig,
    pub topics: TopicsConfig,
    pub series: SeriesConfig,
    pub run: RunConfig,
    #[serde(skip)]
    base_dir: PathBuf,
}

fn check_range(name: &str, value: f64, ok: bool) -> Result<(), PipelineError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(PipelineError::Config(format!("{name} = {value} is out of range")))
    }
}

impl PipelineConfig {
    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let text =
            std::fs::read_to_string(path).map_err(|source| PipelineError::Io { path: path.to_path_buf(), source })?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::from_toml(&text, base)
    }

    pub fn from_toml(text: &str, base_dir: impl Into<PathBuf>) -> Result<Self, PipelineError> {
        let mut cfg: PipelineConfig = toml::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))?;
        cfg.base_dir = base_dir.into();
        Ok(cfg)
    }

    pub fn with_base_dir(mut self, base_dir: impl Into<PathBuf>) -> Self {
        self.base_dir = base_dir.into();
        self
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable as TOML")
    }

    /// Resolves a configured path against the config directory.
    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn work_dir(&self) -> PathBuf {
        self.resolve(&self.paths.work)
    }

    pub fn stage_dir(&self, stage: Stage) -> PathBuf {
        self.work_dir().join(stage.as_str())
    }

    /// SHA-256 of the configuration with the worker count zeroed, since
    /// workers never change results.
    pub fn hash(&self) -> String {
        let mut c = self.clone();
        c.run.workers = 0;
        hex::encode(Sha256::digest(c.to_toml().as_bytes()))
    }

    /// Checks thresholds and that inputs needed by `stages` exist.
    pub fn validate(&self, stages: &[Stage]) -> Result<(), PipelineError> {
        let c = |name, v: f64, ok| check_range(name, v, ok);
        c(
            "clean.fourgram_threshold",
            self.clean.fourgram_threshold,
            (0.0..=1.0).contains(&self.clean.fourgram_threshold),
        )?;
        c("turns.min_speaker_share", self.turns.min_speaker_share, (0.0..1.0).contains(&self.turns.min_speaker_share))?;
        let q = self.network.name_prob_quantile;
        c("network.name_prob_quantile", q, q > 0.0 && q <= 1.0)?;
        c("topics.beta", self.topics.beta, self.topics.beta > 0.0)?;
        if let Some(a) = self.topics.alpha {
            c("topics.alpha", a, a > 0.0)?;
        }
        if let Some(t) = self.series.share_threshold {
            c("series.share_threshold", t, (0.0..=1.0).contains(&t))?;
        }
        let positive = [
            ("topics.k", self.topics.k),
            ("topics.iterations", self.topics.iterations),
            ("series.window_days", self.series.window_days),
            ("run.workers", self.run.workers),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(PipelineError::Config(format!("{name} must be at least 1")));
            }
        }
        if let Some(&t) = self.series.topics.iter().find(|&&t| t >= self.topics.k) {
            return Err(PipelineError::Config(format!("series topic {t} is not below topics.k = {}", self.topics.k)));
        }
        if self.scope.start > self.scope.end {
            return Err(PipelineError::Config(format!(
                "scope.start {} is after scope.end {}",
                self.scope.start, self.scope.end
            )));
        }
        if self.series.phrases.iter().any(|p| crate::text::normalized_tokens(p).is_empty()) {
            return Err(PipelineError::Config("series.phrases contains an empty phrase".into()));
        }

        let must_exist = |name: &str, p: &Option<PathBuf>, required: bool| -> Result<(), PipelineError> {
            match p {
                Some(p) if !self.resolve(p).exists() => {
                    Err(PipelineError::Config(format!("{name} {} does not exist", self.resolve(p).display())))
                }
                None if required => Err(PipelineError::Config(format!("{name} is required"))),
                _ => Ok(()),
            }
        };
        must_exist("paths.manifest", &self.paths.manifest, stages.contains(&Stage::Ingest))?;
        must_exist("paths.transcripts", &self.paths.transcripts, stages.contains(&Stage::Clean))?;
        must_exist("paths.frames", &self.paths.frames, false)?;
        must_exist("paths.diarization", &self.paths.diarization, false)?;
        must_exist("roles.cues", &self.roles.cues, false)?;
        match self.roles.classifier.as_str() {
            "baseline" => {}
            other => match other.strip_prefix("file:") {
                Some(p) => must_exist("roles.classifier file", &Some(PathBuf::from(p)), true)?,
                None => return Err(PipelineError::Config(format!("unknown classifier {other:?}"))),
            },
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let cfg = PipelineConfig::from_toml("[topics]\nk = 12\n[run]\nworkers = 4\n", "/tmp").unwrap();
        assert_eq!(cfg.topics.k, 12);
        assert_eq!(cfg.topics.beta, 0.01);
        assert_eq!(cfg.topics.lda().alpha(), 50.0 / 12.0);
        assert_eq!(cfg.stage_dir(Stage::Clean), PathBuf::from("/tmp/out/clean"));
        assert!(PipelineConfig::from_toml("[topics]\nkk = 1\n", ".").is_err());
    }

    #[test]
    fn hash_ignores_workers() {
        let a = PipelineConfig::default();
        let mut b = a.clone();
        b.run.workers = 8;
        assert_eq!(a.hash(), b.hash());
        b.topics.seed = 99;
        assert_ne!(a.hash(), b.hash());
        let round = PipelineConfig::from_toml(&a.to_toml(), "").unwrap();
        assert_eq!(round, a);
    }

    #[test]
    fn validation() {
        let mut cfg = PipelineConfig::default();
        cfg.validate(&[Stage::Network]).unwrap();
        assert!(cfg.validate(&[Stage::Ingest]).is_err());
        cfg.clean.fourgram_threshold = 1.5;
        assert!(cfg.validate(&[]).is_err());
        cfg = PipelineConfig::default();
        cfg.series.topics = vec![500];
        assert!(cfg.validate(&[]).is_err());
        cfg = PipelineConfig::default();
        cfg.roles.classifier = "magic".into();
        assert!(cfg.validate(&[]).is_err());
    }
}
