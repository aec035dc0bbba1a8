use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};
use podcorpus::pipeline::{run_pipeline, run_stage, PipelineConfig, RunManifest, Stage, StageManifest};

/// Podcast corpus pipeline: ingest feeds, clean transcripts, build turns,
/// infer roles, and compute guest-network, topic and time-series outputs.
#[derive(Parser, Debug)]
#[command(name = "podcorpus", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse feeds, filter to the date window and language, write episode metadata.
    Ingest(Opts),
    /// Attach transcripts, trim hallucinated tails and drop repetitive episodes.
    Clean(Opts),
    /// Align prosodic frames and diarization, segment speaker turns.
    Turns(Opts),
    /// Extract person names and label them host, guest or neither.
    Roles(Opts),
    /// Build the podcast guest network and its modularity table.
    Network(Opts),
    /// Fit the topic model and write theta and top words.
    Topics(Opts),
    /// Daily and rolling topic and mention time series.
    Series(Opts),
    /// Descriptive corpus summary tables.
    Report(Opts),
    /// Run several stages in dependency order (all by default).
    Run {
        #[command(flatten)]
        opts: Opts,
        /// Stages to run, e.g. `--stages clean,turns`.
        #[arg(long, value_delimiter = ',')]
        stages: Vec<Stage>,
    },
    /// Print the effective configuration after flag overrides.
    Config(Opts),
}

/// Each flag overrides one key of the configuration file.
#[derive(Args, Debug, Default)]
struct Opts {
    /// Pipeline configuration file (TOML).
    #[arg(long, short)]
    config: Option<PathBuf>,
    /// paths.manifest
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// paths.transcripts
    #[arg(long)]
    transcripts: Option<PathBuf>,
    /// paths.frames
    #[arg(long)]
    frames: Option<PathBuf>,
    /// paths.diarization
    #[arg(long)]
    diarization: Option<PathBuf>,
    /// paths.work
    #[arg(long)]
    out: Option<PathBuf>,
    /// scope.start
    #[arg(long)]
    start: Option<NaiveDate>,
    /// scope.end
    #[arg(long)]
    end: Option<NaiveDate>,
    /// scope.language_prefix
    #[arg(long)]
    language: Option<String>,
    /// clean.fourgram_threshold
    #[arg(long)]
    fourgram_threshold: Option<f64>,
    /// turns.min_speaker_share
    #[arg(long)]
    min_speaker_share: Option<f64>,
    /// roles.classifier: `baseline` or `file:<predictions.csv>`
    #[arg(long)]
    classifier: Option<String>,
    /// roles.cues
    #[arg(long)]
    cues: Option<PathBuf>,
    /// network.name_prob_quantile
    #[arg(long)]
    name_prob_quantile: Option<f64>,
    /// topics.k
    #[arg(long)]
    k: Option<usize>,
    /// topics.alpha
    #[arg(long)]
    alpha: Option<f64>,
    /// topics.beta
    #[arg(long)]
    beta: Option<f64>,
    /// topics.iterations
    #[arg(long)]
    iterations: Option<usize>,
    /// topics.seed
    #[arg(long)]
    seed: Option<u64>,
    /// topics.top_words
    #[arg(long)]
    top_words: Option<usize>,
    /// series.topics (repeatable)
    #[arg(long = "topic")]
    topics: Vec<usize>,
    /// series.window_days
    #[arg(long)]
    window: Option<usize>,
    /// series.share_threshold
    #[arg(long)]
    share_threshold: Option<f64>,
    /// series.phrases (repeatable)
    #[arg(long = "phrase")]
    phrases: Vec<String>,
    /// run.workers
    #[arg(long, short = 'j')]
    workers: Option<usize>,
}

fn absolute(p: PathBuf) -> Result<PathBuf> {
    std::path::absolute(&p).with_context(|| format!("resolving {}", p.display()))
}

impl Opts {
    fn config(self) -> Result<PipelineConfig> {
        let mut cfg = match &self.config {
            Some(path) => PipelineConfig::load(path).with_context(|| format!("loading {}", path.display()))?,
            None => PipelineConfig::default().with_base_dir(std::env::current_dir()?),
        };
        // Paths given on the command line are relative to the working directory.
        let set = |slot: &mut Option<PathBuf>, v: Option<PathBuf>| -> Result<()> {
            if let Some(v) = v {
                *slot = Some(absolute(v)?);
            }
            Ok(())
        };
        set(&mut cfg.paths.manifest, self.manifest)?;
        set(&mut cfg.paths.transcripts, self.transcripts)?;
        set(&mut cfg.paths.frames, self.frames)?;
        set(&mut cfg.paths.diarization, self.diarization)?;
        set(&mut cfg.roles.cues, self.cues)?;
        if let Some(v) = self.out {
            cfg.paths.work = absolute(v)?;
        }
        if let Some(v) = self.classifier {
            cfg.roles.classifier = match v.strip_prefix("file:") {
                Some(p) => format!("file:{}", absolute(PathBuf::from(p))?.display()),
                None => v,
            };
        }
        macro_rules! over {
            ($($field:expr => $slot:expr),* $(,)?) => { $(if let Some(v) = $field { $slot = v; })* };
        }
        over! {
            self.start => cfg.scope.start,
            self.end => cfg.scope.end,
            self.language => cfg.scope.language_prefix,
            self.fourgram_threshold => cfg.clean.fourgram_threshold,
            self.min_speaker_share => cfg.turns.min_speaker_share,
            self.name_prob_quantile => cfg.network.name_prob_quantile,
            self.k => cfg.topics.k,
            self.beta => cfg.topics.beta,
            self.iterations => cfg.topics.iterations,
            self.seed => cfg.topics.seed,
            self.top_words => cfg.topics.top_words,
            self.window => cfg.series.window_days,
            self.workers => cfg.run.workers,
        }
        if self.alpha.is_some() {
            cfg.topics.alpha = self.alpha;
        }
        if self.share_threshold.is_some() {
            cfg.series.share_threshold = self.share_threshold;
        }
        if !self.topics.is_empty() {
            cfg.series.topics = self.topics;
        }
        if !self.phrases.is_empty() {
            cfg.series.phrases = self.phrases;
        }
        Ok(cfg)
    }
}

fn print_stage(m: &StageManifest) {
    println!(
        "{:<8} input={:<6} retained={:<6} rejected={:<6} conserved={} {:.2}s",
        m.stage.as_str(),
        m.input,
        m.retained,
        m.rejected,
        m.conserved,
        m.seconds
    );
}

fn single(stage: Stage, opts: Opts) -> Result<bool> {
    let cfg = opts.config()?;
    let m = run_stage(&cfg, stage).with_context(|| format!("stage {stage}"))?;
    print_stage(&m);
    Ok(m.conserved)
}

fn run(opts: Opts, stages: Vec<Stage>) -> Result<bool> {
    let cfg = opts.config()?;
    let stages = if stages.is_empty() { Stage::ALL.to_vec() } else { stages };
    let RunManifest { stages, ok, config_hash, .. } = run_pipeline(&cfg, &stages)?;
    for m in &stages {
        print_stage(m);
    }
    println!("config {config_hash}");
    println!("manifest {}", Path::new(&cfg.work_dir()).join("run_manifest.json").display());
    Ok(ok)
}

fn main() -> Result<ExitCode> {
    let ok = match Cli::parse().command {
        Command::Ingest(o) => single(Stage::Ingest, o)?,
        Command::Clean(o) => single(Stage::Clean, o)?,
        Command::Turns(o) => single(Stage::Turns, o)?,
        Command::Roles(o) => single(Stage::Roles, o)?,
        Command::Network(o) => single(Stage::Network, o)?,
        Command::Topics(o) => single(Stage::Topics, o)?,
        Command::Series(o) => single(Stage::Series, o)?,
        Command::Report(o) => single(Stage::Report, o)?,
        Command::Run { opts, stages } => run(opts, stages)?,
        Command::Config(o) => {
            print!("{}", o.config()?.to_toml());
            true
        }
    };
    if ok {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("count conservation failed; see the stage manifests");
        Ok(ExitCode::from(2))
    }
}
