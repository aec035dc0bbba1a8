//! LDA topic model fitted by collapsed Gibbs sampling, plus the
//! time-series and per-category analytics built on top of it.

mod export;
mod features;
mod lda;
mod preprocess;
mod series;

pub use export::{write_series_csv, write_theta_csv, write_top_words_csv, write_topic_word_csv, write_vocabulary};
pub use features::{category_feature_summary, episode_feature_mean, FeatureRow, FeatureSummary, ProsodicFeature};
pub use lda::{fit_lda, fit_lda_observed, fold_in, infer_theta, LdaConfig, TopicModel};
pub use preprocess::{build_corpus, is_stopword, preprocess, Corpus, Vocabulary, MAX_WORDS, STOPWORDS_VERSION};
pub use series::{
    mention_rate, phrase_mentioned, roll, show_mention_share, topic_timeseries, SeriesMeasure, SeriesPair, SeriesPoint,
    TimeSeries,
};

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum TopicsError {
    #[error("corpus has no documents with tokens")]
    EmptyCorpus,
    #[error("topic count must be at least 1")]
    InvalidTopicCount,
    #[error("{k} topics requested but the corpus has only {tokens} tokens")]
    TooFewTokens { k: usize, tokens: usize },
    #[error("iteration count must be at least 1")]
    InvalidIterations,
    #[error("{name} prior must be positive and finite, got {value}")]
    InvalidPrior { name: &'static str, value: f64 },
    #[error("topic {topic} out of range for a {k}-topic model")]
    TopicOutOfRange { topic: usize, k: usize },
    #[error("rolling window must be at least one day")]
    InvalidWindow,
    #[error("mention phrase is empty after normalization")]
    EmptyPhrase,
    #[error("no podcasts to take a share over")]
    NoPodcasts,
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}
