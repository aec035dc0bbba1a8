//! Synthetic inputs for the benchmarks.

use podcorpus::topics::{build_corpus, Corpus};
use podcorpus::turns::ProsodicFrame;
use podcorpus::WordRecord;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` tokens drawn uniformly from a vocabulary of `vocab` words.
pub fn tokens(n: usize, vocab: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| format!("w{}", rng.random_range(0..vocab))).collect()
}

/// Random simple graph with about `m` edges and a random `communities`-way
/// partition.
pub fn random_graph(n: usize, m: usize, communities: usize, seed: u64) -> (Vec<(usize, usize)>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (0..m)
        .map(|_| {
            let a = rng.random_range(0..n);
            let b = (a + rng.random_range(1..n)) % n;
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let labels = (0..n).map(|_| rng.random_range(0..communities)).collect();
    (edges, labels)
}

/// Words with random durations and gaps, and 0.1 s frames spanning them.
pub fn episode(words: usize, seed: u64) -> (Vec<WordRecord>, Vec<ProsodicFrame>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = 0.0;
    let words: Vec<WordRecord> = (0..words)
        .map(|i| {
            t += rng.random_range(0.0..0.2);
            let start = t;
            t += rng.random_range(0.05..0.6);
            WordRecord::new(format!("w{i}"), start, t)
        })
        .collect();
    let frames = (0..(t * 10.0).ceil() as usize)
        .map(|k| ProsodicFrame::new(k as f64 / 10.0, rng.random_range(10.0..30.0), 500.0, [0.0; 4]))
        .collect();
    (words, frames)
}

/// Documents drawn from `topics` planted topics that each own a disjoint
/// slice of the vocabulary.
pub fn planted_corpus(docs: usize, topics: usize, words_per_topic: usize, doc_len: usize, seed: u64) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build_corpus((0..docs).map(|d| {
        let main = rng.random_range(0..topics);
        let doc = (0..doc_len)
            .map(|_| {
                let topic = if rng.random_bool(0.8) { main } else { rng.random_range(0..topics) };
                format!("t{topic}w{}", rng.random_range(0..words_per_topic))
            })
            .collect();
        (format!("d{d}"), doc)
    }))
}
