use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use crate::text::normalize_all;

/// Only this many leading (normalized) transcript words are modeled.
pub const MAX_WORDS: usize = 1000;
pub const STOPWORDS_VERSION: &str = "en-v1";

const STOPWORDS_EN_V1: &str = include_str!("../../data/stopwords_en_v1.txt");

fn stopwords() -> &'static HashSet<&'static str> {
    static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| {
        STOPWORDS_EN_V1.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect()
    })
}

pub fn is_stopword(token: &str) -> bool {
    stopwords().contains(token)
}

/// Lowercases and strips punctuation, keeps the first [`MAX_WORDS`]
/// words, then drops stopwords.
pub fn preprocess<'a>(words: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut tokens = normalize_all(words);
    tokens.truncate(MAX_WORDS);
    tokens.retain(|t| !is_stopword(t));
    tokens
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Vocabulary {
    words: Vec<String>,
    index: HashMap<String, u32>,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn id(&self, word: &str) -> Option<u32> {
        self.index.get(word).copied()
    }

    pub fn word(&self, id: u32) -> &str {
        &self.words[id as usize]
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    fn intern(&mut self, word: &str) -> u32 {
        if let Some(&id) = self.index.get(word) {
            return id;
        }
        let id = self.words.len() as u32;
        self.words.push(word.to_string());
        self.index.insert(word.to_string(), id);
        id
    }

    /// Maps tokens to ids, dropping out-of-vocabulary ones.
    pub fn encode(&self, tokens: &[String]) -> Vec<u32> {
        tokens.iter().filter_map(|t| self.id(t)).collect()
    }
}

/// Documents ready for the sampler.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    pub vocabulary: Vocabulary,
    pub doc_ids: Vec<String>,
    pub docs: Vec<Vec<u32>>,
    /// Documents left with no tokens; not part of `docs`.
    pub empty: Vec<String>,
}

impl Corpus {
    pub fn token_count(&self) -> usize {
        self.docs.iter().map(Vec::len).sum()
    }
}

/// Builds the vocabulary in first-seen order over the documents as given.
pub fn build_corpus<I, S>(documents: I) -> Corpus
where
    I: IntoIterator<Item = (S, Vec<String>)>,
    S: Into<String>,
{
    let mut corpus = Corpus::default();
    for (id, tokens) in documents {
        let id = id.into();
        if tokens.is_empty() {
            corpus.empty.push(id);
            continue;
        }
        let ids = tokens.iter().map(|t| corpus.vocabulary.intern(t)).collect();
        corpus.doc_ids.push(id);
        corpus.docs.push(ids);
    }
    corpus
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncates_before_stopword_removal() {
        let words: Vec<String> = (0..1500).map(|i| if i % 2 == 0 { "the".into() } else { format!("w{i}") }).collect();
        let out = preprocess(words.iter().map(String::as_str));
        assert_eq!(out.len(), 500);
        assert_eq!(out.last().unwrap(), "w999");
    }

    #[test]
    fn stopword_only_is_empty() {
        assert!(preprocess(["The", "and", "Um,", "you", "know"]).is_empty());
        let c = build_corpus([("a", preprocess(["the", "of"])), ("b", preprocess(["Police", "law."]))]);
        assert_eq!(c.empty, vec!["a"]);
        assert_eq!(c.docs, vec![vec![0, 1]]);
        assert_eq!(c.vocabulary.words(), ["police", "law"]);
    }

    #[test]
    fn identical_inputs_identical_ids() {
        let t = preprocess("Baseball season opens with the Yankees and baseball fans".split(' '));
        let c = build_corpus([("a", t.clone()), ("b", t)]);
        assert_eq!(c.docs[0], c.docs[1]);
        assert_eq!(c.vocabulary.encode(&["fans".into(), "zebra".into()]), vec![c.vocabulary.id("fans").unwrap()]);
    }
}
