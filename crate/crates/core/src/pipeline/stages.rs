use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use super::manifest::write_json;
use super::report::{num, write_report, CsvOut};
use super::{PipelineConfig, PipelineError, Reject, RunManifest, Stage, StageManifest};
use crate::feed::{filter_scope, parse_feed, read_manifest, DateWindow, FeedSource, FileFeedSource, QuarantineReason};
use crate::model::{
    read_jsonl, validate_episode, write_jsonl, EpisodeRecord, EpisodeTopics, RoleLabel, Turn, WordRecord,
};
use crate::network::{
    build_bipartite, category_modularity, modularity, project_one_mode, write_edges_csv, write_modularity_csv,
    write_nodes_csv, NameStats, NetworkError, Partition,
};
use crate::quality::{filter_repetitive, trim_hallucinated_tail, Decision};
use crate::roles::{
    extract_candidates, infer_roles, CueClassifier, CueConfig, ExtractorConfig, FileClassifier, RoleClassifier,
};
use crate::text::{normalize_all, normalized_tokens};
use crate::topics::{
    build_corpus, fit_lda, infer_theta, mention_rate, phrase_mentioned, preprocess, show_mention_share,
    topic_timeseries, write_series_csv, write_theta_csv, write_top_words_csv, write_topic_word_csv, write_vocabulary,
    SeriesPair, STOPWORDS_VERSION,
};
use crate::turns::{
    align_prosody, apply_host_voice, assign_speakers, filter_minor_speakers, map_host_voice, read_frames_csv,
    read_segments_csv, segment_turns,
};

const EPISODES: &str = "episodes.jsonl";
const REJECTS: &str = "rejects.jsonl";
const TURNS: &str = "turns.jsonl";

/// Runs a single stage from its predecessor's output.
pub fn run_stage(cfg: &PipelineConfig, stage: Stage) -> Result<StageManifest, PipelineError> {
    cfg.validate(&[stage])?;
    Runner::new(cfg)?.run(stage)
}

/// Runs the given stages in dependency order and writes
/// `run_manifest.json` to the work directory.
pub fn run_pipeline(cfg: &PipelineConfig, stages: &[Stage]) -> Result<RunManifest, PipelineError> {
    cfg.validate(stages)?;
    let runner = Runner::new(cfg)?;
    let ordered: BTreeSet<Stage> = stages.iter().copied().collect();
    let mut done = Vec::with_capacity(ordered.len());
    for stage in ordered {
        done.push(runner.run(stage)?);
    }
    let manifest = RunManifest::new(runner.hash.clone(), cfg.run.workers, done);
    write_json(&manifest, &cfg.work_dir().join("run_manifest.json"))?;
    Ok(manifest)
}

struct Runner<'a> {
    cfg: &'a PipelineConfig,
    pool: rayon::ThreadPool,
    hash: String,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> PipelineError + '_ {
    move |source| PipelineError::Io { path: path.to_path_buf(), source }
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    match p.downcast::<String>() {
        Ok(s) => format!("panic: {s}"),
        Err(p) => match p.downcast::<&str>() {
            Ok(s) => format!("panic: {s}"),
            Err(_) => "panic".into(),
        },
    }
}

impl<'a> Runner<'a> {
    fn new(cfg: &'a PipelineConfig) -> Result<Self, PipelineError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.run.workers)
            .build()
            .map_err(|e| PipelineError::Workers(e.to_string()))?;
        Ok(Runner { cfg, pool, hash: cfg.hash() })
    }

    fn run(&self, stage: Stage) -> Result<StageManifest, PipelineError> {
        let started = Instant::now();
        let dir = self.cfg.stage_dir(stage);
        std::fs::create_dir_all(&dir).map_err(io_err(&dir))?;
        let mut m = match stage {
            Stage::Ingest => self.ingest(&dir),
            Stage::Clean => self.clean(&dir),
            Stage::Turns => self.turns(&dir),
            Stage::Roles => self.roles(&dir),
            Stage::Network => self.network(&dir),
            Stage::Topics => self.topics(&dir),
            Stage::Series => self.series(&dir),
            Stage::Report => self.report(&dir),
        }?;
        m.seconds = started.elapsed().as_secs_f64();
        write_json(&m, &dir.join("manifest.json"))?;
        Ok(m)
    }

    fn manifest(&self, stage: Stage, input: usize, retained: usize, rejected: usize) -> StageManifest {
        StageManifest::new(stage, input, retained, rejected, self.hash.clone())
    }

    fn upstream_file(&self, stage: Stage, name: &str) -> Result<PathBuf, PipelineError> {
        let upstream = stage.upstream().expect("only ingest has no upstream");
        let path = self.cfg.stage_dir(upstream).join(name);
        if !path.exists() {
            return Err(PipelineError::MissingUpstream { stage, upstream, path });
        }
        Ok(path)
    }

    fn upstream_episodes(&self, stage: Stage) -> Result<Vec<EpisodeRecord>, PipelineError> {
        Ok(read_jsonl(&self.upstream_file(stage, EPISODES)?)?)
    }

    /// Applies `f` to every item on the worker pool, in input order. Items
    /// for which `f` fails or panics become rejects.
    fn per_item<T, R, F>(&self, stage: Stage, items: Vec<T>, id: fn(&T) -> String, f: F) -> (Vec<R>, Vec<Reject>)
    where
        T: Send,
        R: Send,
        F: Fn(T) -> Result<R, String> + Sync,
    {
        let results: Vec<(String, Result<R, String>)> = self.pool.install(|| {
            items
                .into_par_iter()
                .map(|item| {
                    let key = id(&item);
                    let r = catch_unwind(AssertUnwindSafe(|| f(item))).unwrap_or_else(|p| Err(panic_message(p)));
                    (key, r)
                })
                .collect()
        });
        let mut kept = Vec::with_capacity(results.len());
        let mut rejects = Vec::new();
        for (key, r) in results {
            match r {
                Ok(v) => kept.push(v),
                Err(reason) => rejects.push(Reject { id: key, stage, reason }),
            }
        }
        (kept, rejects)
    }

    fn ingest(&self, dir: &Path) -> Result<StageManifest, PipelineError> {
        let stage = Stage::Ingest;
        let manifest_path = self.cfg.resolve(self.cfg.paths.manifest.as_deref().expect("validated"));
        let entries = read_manifest(&manifest_path)?;
        let parsed: Vec<_> = self.pool.install(|| {
            entries
                .par_iter()
                .map(|e| FileFeedSource.fetch(e).and_then(|doc| parse_feed(&doc, &e.podcast_id, e.feed_url.as_deref())))
                .collect()
        });
        let mut rejects = Vec::new();
        let mut records = Vec::new();
        let mut seen = HashSet::new();
        for (entry, result) in entries.iter().zip(parsed) {
            match result {
                Err(e) => rejects.push(Reject { id: entry.podcast_id.clone(), stage, reason: format!("feed: {e}") }),
                Ok(feed) => {
                    for item in feed.episodes {
                        let mut rec = EpisodeRecord::new(feed.podcast.clone(), item.meta);
                        for f in item.flags {
                            rec.flag(f.as_str());
                        }
                        if seen.insert(rec.id().to_string()) {
                            records.push(rec);
                        } else {
                            rejects.push(Reject {
                                id: rec.id().to_string(),
                                stage,
                                reason: "duplicate episode id".into(),
                            });
                        }
                    }
                }
            }
        }
        let input = records.len() + rejects.len();
        let window = DateWindow::new(self.cfg.scope.start, self.cfg.scope.end)?;
        let scoped = filter_scope(records, window, &self.cfg.scope.language_prefix);
        let reject = |id: &String, reason: &str| Reject { id: id.clone(), stage, reason: reason.into() };
        rejects.extend(scoped.out_of_window.iter().map(|id| reject(id, "outside date window")));
        rejects.extend(scoped.language_mismatch.iter().map(|id| reject(id, "language mismatch")));
        let mut quarantine = Vec::new();
        for (rec, why) in scoped.quarantined {
            let reason = match why {
                QuarantineReason::MissingDate => "quarantined: missing date",
                QuarantineReason::MissingLanguage => "quarantined: missing language",
            };
            rejects.push(reject(&rec.episode.episode_id, reason));
            quarantine.push(rec);
        }
        let mut retained = scoped.retained;
        retained.sort_by(|a, b| a.id().cmp(b.id()));
        write_jsonl(&dir.join(EPISODES), &retained)?;
        write_jsonl(&dir.join(REJECTS), &rejects)?;
        write_jsonl(&dir.join("quarantine.jsonl"), &quarantine)?;
        let mut m = self.manifest(stage, input, retained.len(), rejects.len());
        m.outputs = vec![EPISODES.into(), REJECTS.into(), "quarantine.jsonl".into()];
        m.detail("feeds", entries.len());
        m.detail("podcasts", retained.iter().map(|e| e.podcast.podcast_id.as_str()).collect::<BTreeSet<_>>().len());
        Ok(m)
    }

    fn clean(&self, dir: &Path) -> Result<StageManifest, PipelineError> {
        let stage = Stage::Clean;
        let episodes = self.upstream_episodes(stage)?;
        let input = episodes.len();
        let transcripts = self.cfg.resolve(self.cfg.paths.transcripts.as_deref().expect("validated"));
        let threshold = self.cfg.clean.fourgram_threshold;
        let (kept, rejects) = self.per_item(
            stage,
            episodes,
            |e| e.id().to_string(),
            |mut rec| {
                let path = transcripts.join(format!("{}.jsonl", rec.id()));
                if !path.exists() {
                    return Err("transcript missing".into());
                }
                rec.words = read_jsonl::<WordRecord>(&path).map_err(|e| format!("transcript: {e}"))?;
                if let Some(d) = rec.episode.duration_s {
                    let (words, dropped) = trim_hallucinated_tail(std::mem::take(&mut rec.words), d as f64);
                    rec.words = words;
                    rec.quality.trimmed_tail_words = dropped;
                    if dropped > 0 {
                        rec.flag("trimmed-tail");
                    }
                }
                if rec.words.is_empty() {
                    return Err("empty transcript".into());
                }
                let report = validate_episode(&rec);
                if !report.is_empty() {
                    let what: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
                    return Err(format!("invalid transcript: {}", what.join("; ")));
                }
                if filter_repetitive(&mut rec, threshold) == Decision::Remove {
                    let ratio = rec.quality.repetition.map_or(0.0, |r| r.ratio);
                    return Err(format!("repetitive transcript: 4-gram ratio {ratio:.4}"));
                }
                Ok(rec)
            },
        );
        write_jsonl(&dir.join(EPISODES), &kept)?;
        write_jsonl(&dir.join(REJECTS), &rejects)?;
        let mut m = self.manifest(stage, input, kept.len(), rejects.len());
        m.outputs = vec![EPISODES.into(), REJECTS.into()];
        m.detail("words", kept.iter().map(|e| e.words.len()).sum::<usize>());
        m.detail("trimmed_tail_words", kept.iter().map(|e| e.quality.trimmed_tail_words).sum::<usize>());
        Ok(m)
    }

    fn turns(&self, dir: &Path) -> Result<StageManifest, PipelineError> {
        let stage = Stage::Turns;
        let episodes = self.upstream_episodes(stage)?;
        let input = episodes.len();
        let frames_dir = self.cfg.paths.frames.as_deref().map(|p| self.cfg.resolve(p));
        let diar_dir = self.cfg.paths.diarization.as_deref().map(|p| self.cfg.resolve(p));
        let min_share = self.cfg.turns.min_speaker_share;
        let (kept, rejects) = self.per_item(
            stage,
            episodes,
            |e| e.id().to_string(),
            |mut rec| {
                let id = rec.id().to_string();
                match frames_dir.as_ref().map(|d| d.join(format!("{id}.csv"))).filter(|p| p.exists()) {
                    Some(p) => {
                        let frames = read_frames_csv(&p).map_err(|e| format!("frames: {e}"))?;
                        align_prosody(&mut rec.words, &frames);
                    }
                    None => rec.flag("no-prosody"),
                }
                match diar_dir.as_ref().map(|d| d.join(format!("{id}.csv"))).filter(|p| p.exists()) {
                    Some(p) => {
                        let segments = read_segments_csv(&p).map_err(|e| format!("diarization: {e}"))?;
                        assign_speakers(&mut rec.words, &segments);
                        let shares = filter_minor_speakers(&mut rec.words, min_share);
                        rec.speaker_count = Some(shares.retained.len());
                    }
                    None => rec.flag("no-diarization"),
                }
                let turns = segment_turns(&id, &rec.words);
                Ok((rec, turns))
            },
        );
        let (records, turns): (Vec<EpisodeRecord>, Vec<Vec<Turn>>) = kept.into_iter().unzip();
        let turns: Vec<Turn> = turns.into_iter().flatten().collect();
        write_jsonl(&dir.join(EPISODES), &records)?;
        write_jsonl(&dir.join(TURNS), &turns)?;
        write_jsonl(&dir.join(REJECTS), &rejects)?;
        let mut m = self.manifest(stage, input, records.len(), rejects.len());
        m.outputs = vec![EPISODES.into(), TURNS.into(), REJECTS.into()];
        m.detail("turns", turns.len());
        m.detail("words_with_prosody", records.iter().flat_map(|e| &e.words).filter(|w| w.prosody().is_some()).count());
        Ok(m)
    }

    fn classifier(&self) -> Result<Box<dyn RoleClassifier>, PipelineError> {
        let roles = &self.cfg.roles;
        if let Some(path) = roles.classifier.strip_prefix("file:") {
            return Ok(Box::new(FileClassifier::from_path(&self.cfg.resolve(Path::new(path)))?));
        }
        let cues = match &roles.cues {
            Some(p) => {
                let p = self.cfg.resolve(p);
                CueConfig::from_toml(&std::fs::read_to_string(&p).map_err(io_err(&p))?)?
            }
            None => CueConfig::default(),
        };
        Ok(Box::new(CueClassifier::new(cues)))
    }

    fn roles(&self, dir: &Path) -> Result<StageManifest, PipelineError> {
        let stage = Stage::Roles;
        let episodes = self.upstream_episodes(stage)?;
        let all_turns: Vec<Turn> = read_jsonl(&self.upstream_file(stage, TURNS)?)?;
        let mut by_episode: HashMap<String, Vec<Turn>> = HashMap::new();
        for t in all_turns {
            by_episode.entry(t.episode_id.clone()).or_default().push(t);
        }
        let input = episodes.len();
        let items: Vec<(EpisodeRecord, Vec<Turn>)> = episodes
            .into_iter()
            .map(|e| {
                let t = by_episode.remove(e.id()).unwrap_or_default();
                (e, t)
            })
            .collect();
        let classifier = self.classifier()?;
        let extractor = ExtractorConfig::default();
        let (kept, rejects) = self.per_item(
            stage,
            items,
            |(e, _)| e.id().to_string(),
            |(mut rec, mut turns)| {
                let mentions = extract_candidates(&rec, &extractor);
                rec.roles = infer_roles(rec.id(), &mentions, classifier.as_ref());
                let host = rec
                    .roles
                    .iter()
                    .filter(|r| r.label == RoleLabel::Host)
                    .fold(None, |best: Option<&crate::model::RoleAssignment>, r| match best {
                        Some(b) if b.confidence >= r.confidence => Some(b),
                        _ => Some(r),
                    })
                    .map(|r| r.name.clone());
                if let Some(name) = host {
                    if let Some(speaker) = map_host_voice(&turns, &name) {
                        apply_host_voice(&mut turns, &speaker, &name);
                        rec.host_speaker = Some(speaker);
                    }
                }
                Ok((rec, turns, mentions.len()))
            },
        );
        let mentions: usize = kept.iter().map(|(_, _, n)| n).sum();
        let (records, turns): (Vec<EpisodeRecord>, Vec<Turn>) =
            kept.into_iter().fold((Vec::new(), Vec::new()), |(mut r, mut t), (rec, turns, _)| {
                r.push(rec);
                t.extend(turns);
                (r, t)
            });
        write_jsonl(&dir.join(EPISODES), &records)?;
        write_jsonl(&dir.join(TURNS), &turns)?;
        write_jsonl(&dir.join(REJECTS), &rejects)?;
        let mut m = self.manifest(stage, input, records.len(), rejects.len());
        m.outputs = vec![EPISODES.into(), TURNS.into(), REJECTS.into()];
        m.detail("mentions", mentions);
        let mut labels: BTreeMap<&str, usize> = BTreeMap::new();
        for r in records.iter().flat_map(|e| &e.roles) {
            *labels.entry(r.label.as_str()).or_default() += 1;
        }
        m.detail("assignments", labels);
        m.detail("host_voices_mapped", records.iter().filter(|e| e.host_speaker.is_some()).count());
        Ok(m)
    }

    fn network(&self, dir: &Path) -> Result<StageManifest, PipelineError> {
        let stage = Stage::Network;
        let episodes = self.upstream_episodes(stage)?;
        let stats = NameStats::from_names(episodes.iter().flat_map(|e| e.roles.iter().map(|r| r.name.as_str())));
        let bipartite = build_bipartite(&episodes, &stats, &self.cfg.network)?;
        let graph = project_one_mode(&bipartite);

        let mut w = CsvOut::create(&dir.join("bipartite.csv"), &["podcast_id", "guest"])?;
        for (pid, key) in &bipartite.edges {
            w.row([pid.as_str(), bipartite.guests[key].as_str()])?;
        }
        w.finish()?;
        write_edges_csv(&graph, &dir.join("edges.csv"))?;
        write_nodes_csv(&graph, &dir.join("nodes.csv"))?;
        let (overall, per_category) = match category_modularity(&graph) {
            Ok(q) => (Some(modularity(&graph, &Partition::from_labels(&graph.categories))?), q),
            Err(NetworkError::NoEdges) => (None, BTreeMap::new()),
            Err(e) => return Err(e.into()),
        };
        write_modularity_csv(&graph, overall, &per_category, &dir.join("modularity.csv"))?;

        let mut m = self.manifest(stage, episodes.len(), episodes.len(), 0);
        m.outputs = ["bipartite.csv", "edges.csv", "nodes.csv", "modularity.csv"].map(String::from).to_vec();
        m.detail("guests", bipartite.guests.len());
        m.detail("bipartite_edges", bipartite.edges.len());
        m.detail("exclusions", bipartite.excluded);
        m.detail("name_probability_threshold", bipartite.threshold);
        m.detail("nodes", graph.nodes.len());
        m.detail("edges", graph.edge_count());
        Ok(m)
    }

    fn topics(&self, dir: &Path) -> Result<StageManifest, PipelineError> {
        let stage = Stage::Topics;
        let mut episodes = self.upstream_episodes(stage)?;
        let docs: Vec<Vec<String>> = self
            .pool
            .install(|| episodes.par_iter().map(|e| preprocess(e.words.iter().map(|w| w.token.as_str()))).collect());
        let corpus = build_corpus(episodes.iter().map(|e| e.id().to_string()).zip(docs));
        let lda = self.cfg.topics.lda();
        let model = fit_lda(&corpus, &lda)?;
        let row: HashMap<&str, usize> = model.doc_ids.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();
        let empty_theta = infer_theta(&vec![0; model.k], model.alpha);
        let mut thetas = Vec::with_capacity(episodes.len());
        for rec in &mut episodes {
            let theta = match row.get(rec.id()) {
                Some(&d) => model.theta(d),
                None => {
                    rec.flag("empty-topic-document");
                    empty_theta.clone()
                }
            };
            let t = EpisodeTopics { episode_id: rec.id().to_string(), theta };
            thetas.push(t.clone());
            rec.topics = Some(t);
        }
        write_jsonl(&dir.join(EPISODES), &episodes)?;
        write_theta_csv(&thetas, &dir.join("theta.csv"))?;
        write_topic_word_csv(&model, &dir.join("topic_word.csv"))?;
        write_vocabulary(&model, &dir.join("vocabulary.txt"))?;
        write_top_words_csv(&model, self.cfg.topics.top_words, &dir.join("top_words.csv"))?;

        let mut m = self.manifest(stage, episodes.len(), episodes.len(), 0);
        m.outputs =
            [EPISODES, "theta.csv", "topic_word.csv", "vocabulary.txt", "top_words.csv"].map(String::from).to_vec();
        m.detail("k", model.k);
        m.detail("alpha", model.alpha);
        m.detail("beta", model.beta);
        m.detail("iterations", model.iterations_run);
        m.detail("seed", model.seed);
        m.detail("vocabulary", model.vocab_size());
        m.detail("tokens", corpus.token_count());
        m.detail("empty_documents", &corpus.empty);
        m.detail("stopwords", STOPWORDS_VERSION);
        Ok(m)
    }

    fn series(&self, dir: &Path) -> Result<StageManifest, PipelineError> {
        let stage = Stage::Series;
        let episodes = self.upstream_episodes(stage)?;
        let sc = &self.cfg.series;
        let mut rejects = Vec::new();
        let mut dated = Vec::new();
        for e in &episodes {
            match (e.episode.publication_date, &e.topics) {
                (Some(d), Some(t)) => dated.push((e, d, t.theta.as_slice())),
                (None, _) => rejects.push(Reject { id: e.id().to_string(), stage, reason: "missing date".into() }),
                (_, None) => rejects.push(Reject { id: e.id().to_string(), stage, reason: "missing topics".into() }),
            }
        }
        let phrases: Vec<(String, String)> =
            sc.phrases.iter().map(|p| (p.clone(), normalized_tokens(p).join("_"))).collect();
        let hits: Vec<Vec<bool>> = self.pool.install(|| {
            dated
                .par_iter()
                .map(|(e, _, _)| {
                    let tokens = normalize_all(e.words.iter().map(|w| w.token.as_str()));
                    phrases.iter().map(|(p, _)| phrase_mentioned(&tokens, p).unwrap_or(false)).collect()
                })
                .collect()
        });

        let mut groups: Vec<(String, PathBuf, Vec<usize>)> =
            vec![("all".into(), dir.to_path_buf(), (0..dated.len()).collect())];
        if sc.per_category {
            let cats: BTreeSet<_> = dated.iter().map(|(e, _, _)| e.podcast.category).collect();
            for c in cats {
                let idx = (0..dated.len()).filter(|&i| dated[i].0.podcast.category == c).collect();
                groups.push((c.as_str().into(), dir.join("by_category").join(c.as_str()), idx));
            }
        }
        let mut outputs = Vec::new();
        let mut write_pair = |pair: &SeriesPair, sub: &Path, stem: &str| -> Result<(), PipelineError> {
            for (which, s) in [("daily", &pair.daily), ("rolled", &pair.rolled)] {
                let path = sub.join(format!("{stem}_{which}.csv"));
                write_series_csv(s, &path)?;
                outputs.push(path.strip_prefix(dir).unwrap_or(&path).display().to_string());
            }
            Ok(())
        };
        let mut share = CsvOut::create(&dir.join("mention_share.csv"), &["scope", "phrase", "podcasts", "share"])?;
        for (label, sub, idx) in &groups {
            std::fs::create_dir_all(sub).map_err(io_err(sub))?;
            if !sc.topics.is_empty() {
                let items: Vec<_> = idx.iter().map(|&i| (dated[i].1, dated[i].2)).collect();
                let pair = topic_timeseries(&items, &sc.topics, sc.window_days, sc.measure())?;
                write_pair(&pair, sub, "topics")?;
            }
            for (pi, (phrase, slug)) in phrases.iter().enumerate() {
                let items: Vec<_> = idx.iter().map(|&i| (dated[i].1, hits[i][pi])).collect();
                let pair = mention_rate(&items, sc.window_days)?;
                write_pair(&pair, sub, &format!("mentions_{slug}"))?;
                let shows: BTreeSet<&str> = idx.iter().map(|&i| dated[i].0.podcast.podcast_id.as_str()).collect();
                let s = show_mention_share(idx.iter().map(|&i| (dated[i].0.podcast.podcast_id.as_str(), hits[i][pi])))?;
                share.row([label.as_str(), phrase.as_str(), &shows.len().to_string(), &num(s)])?;
            }
        }
        share.finish()?;
        write_jsonl(&dir.join(REJECTS), &rejects)?;
        outputs.push("mention_share.csv".into());
        outputs.push(REJECTS.into());
        let mut m = self.manifest(stage, episodes.len(), dated.len(), rejects.len());
        m.outputs = outputs;
        m.detail("topics", &sc.topics);
        m.detail("window_days", sc.window_days);
        Ok(m)
    }

    fn report(&self, dir: &Path) -> Result<StageManifest, PipelineError> {
        let stage = Stage::Report;
        let episodes = self.upstream_episodes(stage)?;
        let (outputs, undated) = write_report(&episodes, dir)?;
        let mut m = self.manifest(stage, episodes.len(), episodes.len(), 0);
        m.outputs = outputs;
        m.detail("episodes_without_duration", undated);
        Ok(m)
    }
}
