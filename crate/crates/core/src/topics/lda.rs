use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Corpus, TopicsError, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LdaConfig {
    pub k: usize,
    /// Symmetric document-topic prior; `None` means 50 / K.
    pub alpha: Option<f64>,
    pub beta: f64,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for LdaConfig {
    fn default() -> Self {
        LdaConfig { k: 200, alpha: None, beta: 0.01, iterations: 1000, seed: 7 }
    }
}

impl LdaConfig {
    pub fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(50.0 / self.k as f64)
    }

    pub fn check(&self) -> Result<(), TopicsError> {
        if self.k == 0 {
            return Err(TopicsError::InvalidTopicCount);
        }
        if self.iterations == 0 {
            return Err(TopicsError::InvalidIterations);
        }
        for (name, value) in [("alpha", self.alpha()), ("beta", self.beta)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(TopicsError::InvalidPrior { name, value });
            }
        }
        Ok(())
    }
}

/// Fitted sampler state.
#[derive(Debug, Clone, PartialEq)]
pub struct TopicModel {
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub seed: u64,
    pub iterations_run: usize,
    pub vocabulary: Vocabulary,
    pub doc_ids: Vec<String>,
    /// K × V, row-major.
    pub topic_word: Vec<u32>,
    pub topic_totals: Vec<u64>,
    /// D × K, row-major.
    pub doc_topic: Vec<u32>,
    /// Topic of each token, per document.
    pub assignments: Vec<Vec<u32>>,
}

impl TopicModel {
    pub fn vocab_size(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn doc_count(&self) -> usize {
        self.assignments.len()
    }

    pub fn topic_word_row(&self, topic: usize) -> &[u32] {
        let v = self.vocab_size();
        &self.topic_word[topic * v..(topic + 1) * v]
    }

    pub fn doc_topic_row(&self, doc: usize) -> &[u32] {
        &self.doc_topic[doc * self.k..(doc + 1) * self.k]
    }

    /// Smoothed topic-word distribution for one topic.
    pub fn phi(&self, topic: usize) -> Vec<f64> {
        let denom = self.topic_totals[topic] as f64 + self.vocab_size() as f64 * self.beta;
        self.topic_word_row(topic).iter().map(|&c| (c as f64 + self.beta) / denom).collect()
    }

    pub fn theta(&self, doc: usize) -> Vec<f64> {
        infer_theta(self.doc_topic_row(doc), self.alpha)
    }

    /// `n` most frequent words of a topic, ties alphabetical.
    pub fn top_words(&self, topic: usize, n: usize) -> Result<Vec<&str>, TopicsError> {
        if topic >= self.k {
            return Err(TopicsError::TopicOutOfRange { topic, k: self.k });
        }
        let row = self.topic_word_row(topic);
        let mut ids: Vec<u32> = (0..self.vocab_size() as u32).collect();
        ids.sort_by(|&a, &b| {
            row[b as usize].cmp(&row[a as usize]).then_with(|| self.vocabulary.word(a).cmp(self.vocabulary.word(b)))
        });
        Ok(ids.into_iter().take(n).map(|id| self.vocabulary.word(id)).collect())
    }

    /// Checks that the three count tables agree with the assignments.
    pub fn check_counts(&self) -> Result<(), String> {
        let tokens: usize = self.assignments.iter().map(Vec::len).sum();
        let tw: u64 = self.topic_word.iter().map(|&c| c as u64).sum();
        let dt: u64 = self.doc_topic.iter().map(|&c| c as u64).sum();
        let tt: u64 = self.topic_totals.iter().sum();
        if tw != tokens as u64 || dt != tokens as u64 || tt != tokens as u64 {
            return Err(format!("token total {tokens}, topic-word {tw}, doc-topic {dt}, topic totals {tt}"));
        }
        for (d, z) in self.assignments.iter().enumerate() {
            if let Some(&bad) = z.iter().find(|&&t| t as usize >= self.k) {
                return Err(format!("document {d} has topic {bad}"));
            }
            let row_sum: u64 = self.doc_topic_row(d).iter().map(|&c| c as u64).sum();
            if row_sum != z.len() as u64 {
                return Err(format!("document {d}: {row_sum} counted vs {} tokens", z.len()));
            }
        }
        for t in 0..self.k {
            let s: u64 = self.topic_word_row(t).iter().map(|&c| c as u64).sum();
            if s != self.topic_totals[t] {
                return Err(format!("topic {t}: row sum {s} vs total {}", self.topic_totals[t]));
            }
        }
        Ok(())
    }
}

/// Posterior mean topic proportions from per-topic token counts.
/// An empty document gets the uniform distribution.
pub fn infer_theta(counts: &[u32], alpha: f64) -> Vec<f64> {
    let n: f64 = counts.iter().map(|&c| c as f64).sum();
    let denom = n + counts.len() as f64 * alpha;
    let mut theta: Vec<f64> = counts.iter().map(|&c| (c as f64 + alpha) / denom).collect();
    let s: f64 = theta.iter().sum();
    theta.iter_mut().for_each(|t| *t /= s);
    theta
}

fn sample(rng: &mut ChaCha8Rng, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let mut u = rng.random::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        u -= w;
        if u < 0.0 {
            return i;
        }
    }
    weights.len() - 1
}

pub fn fit_lda(corpus: &Corpus, config: &LdaConfig) -> Result<TopicModel, TopicsError> {
    fit_lda_observed(corpus, config, 0, |_, _| {})
}

/// Like [`fit_lda`], calling `observer(iteration, model)` after every
/// `every`-th sweep (never when `every` is 0).
pub fn fit_lda_observed(
    corpus: &Corpus,
    config: &LdaConfig,
    every: usize,
    mut observer: impl FnMut(usize, &TopicModel),
) -> Result<TopicModel, TopicsError> {
    config.check()?;
    let tokens = corpus.token_count();
    if tokens == 0 {
        return Err(TopicsError::EmptyCorpus);
    }
    if config.k > tokens {
        return Err(TopicsError::TooFewTokens { k: config.k, tokens });
    }
    let k = config.k;
    let v = corpus.vocabulary.len();
    let alpha = config.alpha();
    let beta = config.beta;
    let v_beta = v as f64 * beta;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut m = TopicModel {
        k,
        alpha,
        beta,
        seed: config.seed,
        iterations_run: 0,
        vocabulary: corpus.vocabulary.clone(),
        doc_ids: corpus.doc_ids.clone(),
        topic_word: vec![0; k * v],
        topic_totals: vec![0; k],
        doc_topic: vec![0; corpus.docs.len() * k],
        assignments: Vec::with_capacity(corpus.docs.len()),
    };
    for (d, doc) in corpus.docs.iter().enumerate() {
        let z: Vec<u32> = doc.iter().map(|_| rng.random_range(0..k as u32)).collect();
        for (&w, &t) in doc.iter().zip(&z) {
            m.topic_word[t as usize * v + w as usize] += 1;
            m.topic_totals[t as usize] += 1;
            m.doc_topic[d * k + t as usize] += 1;
        }
        m.assignments.push(z);
    }

    let mut weights = vec![0.0; k];
    for it in 1..=config.iterations {
        for (d, doc) in corpus.docs.iter().enumerate() {
            for (i, &w) in doc.iter().enumerate() {
                let w = w as usize;
                let old = m.assignments[d][i] as usize;
                m.topic_word[old * v + w] -= 1;
                m.topic_totals[old] -= 1;
                m.doc_topic[d * k + old] -= 1;
                for (t, wt) in weights.iter_mut().enumerate() {
                    *wt = (m.doc_topic[d * k + t] as f64 + alpha) * (m.topic_word[t * v + w] as f64 + beta)
                        / (m.topic_totals[t] as f64 + v_beta);
                }
                let new = sample(&mut rng, &weights);
                m.topic_word[new * v + w] += 1;
                m.topic_totals[new] += 1;
                m.doc_topic[d * k + new] += 1;
                m.assignments[d][i] = new as u32;
            }
        }
        m.iterations_run = it;
        if every > 0 && it % every == 0 {
            observer(it, &m);
        }
    }
    Ok(m)
}

/// Topic counts for an unseen document, sampling its tokens against the
/// fixed topic-word counts of `model`. Out-of-vocabulary ids are ignored.
pub fn fold_in(model: &TopicModel, doc: &[u32], iterations: usize, seed: u64) -> Vec<u32> {
    let (k, v) = (model.k, model.vocab_size());
    let doc: Vec<usize> = doc.iter().map(|&w| w as usize).filter(|&w| w < v).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u32; k];
    let mut z: Vec<usize> = doc.iter().map(|_| rng.random_range(0..k)).collect();
    for &t in &z {
        counts[t] += 1;
    }
    let v_beta = v as f64 * model.beta;
    let mut weights = vec![0.0; k];
    for _ in 0..iterations {
        for (i, &w) in doc.iter().enumerate() {
            counts[z[i]] -= 1;
            for (t, wt) in weights.iter_mut().enumerate() {
                *wt = (counts[t] as f64 + model.alpha) * (model.topic_word[t * v + w] as f64 + model.beta)
                    / (model.topic_totals[t] as f64 + v_beta);
            }
            z[i] = sample(&mut rng, &weights);
            counts[z[i]] += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topics::build_corpus;

    fn corpus(docs: &[&str]) -> Corpus {
        build_corpus(docs.iter().enumerate().map(|(i, d)| (format!("d{i}"), d.split(' ').map(String::from).collect())))
    }

    #[test]
    fn single_topic() {
        let c = corpus(&["apple banana apple cherry"]);
        let m = fit_lda(&c, &LdaConfig { k: 1, iterations: 5, ..Default::default() }).unwrap();
        assert!(m.assignments[0].iter().all(|&t| t == 0));
        assert_eq!(m.theta(0), vec![1.0]);
        m.check_counts().unwrap();
    }

    #[test]
    fn seeded_determinism() {
        let c = corpus(&["a b c d e f", "a a b b c", "x y z x y z", "z z y q"]);
        let cfg = LdaConfig { k: 3, iterations: 50, seed: 11, ..Default::default() };
        let a = fit_lda(&c, &cfg).unwrap();
        let b = fit_lda(&c, &cfg).unwrap();
        assert_eq!(a.topic_word, b.topic_word);
        assert_eq!(a.assignments, b.assignments);
        let other = fit_lda(&c, &LdaConfig { seed: 12, ..cfg }).unwrap();
        other.check_counts().unwrap();
    }

    #[test]
    fn errors() {
        let c = corpus(&["a b"]);
        assert!(matches!(
            fit_lda(&c, &LdaConfig { k: 3, ..Default::default() }),
            Err(TopicsError::TooFewTokens { k: 3, tokens: 2 })
        ));
        assert!(matches!(fit_lda(&c, &LdaConfig { k: 0, ..Default::default() }), Err(TopicsError::InvalidTopicCount)));
        assert!(matches!(
            fit_lda(&c, &LdaConfig { k: 1, iterations: 0, ..Default::default() }),
            Err(TopicsError::InvalidIterations)
        ));
        assert!(matches!(
            fit_lda(&Corpus::default(), &LdaConfig { k: 1, ..Default::default() }),
            Err(TopicsError::EmptyCorpus)
        ));
        assert!(matches!(
            fit_lda(&c, &LdaConfig { k: 1, beta: 0.0, ..Default::default() }),
            Err(TopicsError::InvalidPrior { name: "beta", .. })
        ));
    }

    #[test]
    fn theta_cases() {
        assert_eq!(infer_theta(&[0, 0, 0, 0], 0.5), vec![0.25; 4]);
        let t = infer_theta(&[0, 0, 9, 0], 1e-12);
        assert!((t[2] - 1.0).abs() < 1e-9);
        let t = infer_theta(&[3, 1, 7], 50.0 / 3.0);
        assert!((t.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn top_words_ranking() {
        let c = corpus(&["cat law police"]);
        let mut m = fit_lda(&c, &LdaConfig { k: 1, iterations: 1, ..Default::default() }).unwrap();
        m.topic_word = vec![1, 5, 10];
        assert_eq!(m.top_words(0, 2).unwrap(), vec!["police", "law"]);
        assert!(m.top_words(0, 0).unwrap().is_empty());
        assert_eq!(m.top_words(0, 9).unwrap().len(), 3);
        m.topic_word = vec![2, 2, 2];
        assert_eq!(m.top_words(0, 3).unwrap(), vec!["cat", "law", "police"]);
        assert!(m.top_words(1, 1).is_err());
    }

    #[test]
    fn observer_sees_consistent_counts() {
        let c = corpus(&["a b c d e f", "a a b b c", "x y z x y z"]);
        let mut seen = Vec::new();
        fit_lda_observed(&c, &LdaConfig { k: 2, iterations: 30, ..Default::default() }, 10, |it, m| {
            m.check_counts().unwrap();
            for d in 0..m.doc_count() {
                assert!((m.theta(d).iter().sum::<f64>() - 1.0).abs() < 1e-9);
            }
            seen.push(it);
        })
        .unwrap();
        assert_eq!(seen, vec![10, 20, 30]);
    }

    #[test]
    fn fold_in_prefers_the_matching_topic() {
        let docs: Vec<String> = (0..40)
            .map(|i| {
                if i % 2 == 0 {
                    "ball goal team score ball goal".into()
                } else {
                    "vote law court senate vote law".into()
                }
            })
            .collect();
        let refs: Vec<&str> = docs.iter().map(String::as_str).collect();
        let c = corpus(&refs);
        let m = fit_lda(&c, &LdaConfig { k: 2, alpha: Some(0.1), iterations: 100, ..Default::default() }).unwrap();
        let sports: Vec<u32> = ["ball", "goal", "team", "ball"].iter().map(|w| c.vocabulary.id(w).unwrap()).collect();
        let counts = fold_in(&m, &sports, 50, 3);
        let topic_of_ball =
            (0..2).max_by_key(|&t| m.topic_word_row(t)[c.vocabulary.id("ball").unwrap() as usize]).unwrap();
        assert_eq!(counts[topic_of_ball], 4);
    }
}
