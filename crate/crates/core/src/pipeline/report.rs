use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use super::PipelineError;
use crate::model::{Category, EpisodeRecord};
use crate::roles::role_count_summary;
use crate::topics::{category_feature_summary, episode_feature_mean, ProsodicFeature};

pub(crate) struct CsvOut {
    path: PathBuf,
    inner: csv::Writer<std::fs::File>,
}

impl CsvOut {
    pub(crate) fn create(path: &Path, header: &[&str]) -> Result<Self, PipelineError> {
        let inner =
            csv::Writer::from_path(path).map_err(|source| PipelineError::Csv { path: path.to_path_buf(), source })?;
        let mut out = CsvOut { path: path.to_path_buf(), inner };
        out.row(header)?;
        Ok(out)
    }

    pub(crate) fn row<I, S>(&mut self, fields: I) -> Result<(), PipelineError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.inner.write_record(fields).map_err(|source| PipelineError::Csv { path: self.path.clone(), source })
    }

    pub(crate) fn finish(mut self) -> Result<(), PipelineError> {
        self.inner.flush().map_err(|source| PipelineError::Io { path: self.path.clone(), source })
    }
}

pub(crate) fn num(x: f64) -> String {
    format!("{x:.6}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Writes the descriptive corpus tables; returns the file names written
/// and the number of episodes without a duration.
pub(super) fn write_report(episodes: &[EpisodeRecord], dir: &Path) -> Result<(Vec<String>, usize), PipelineError> {
    let mut outputs = Vec::new();
    let mut file = |name: &str| {
        outputs.push(name.to_string());
        dir.join(name)
    };

    let mut durations: BTreeMap<u64, usize> = BTreeMap::new();
    for d in episodes.iter().filter_map(|e| e.episode.duration_s) {
        *durations.entry(d).or_default() += 1;
    }
    let with_duration: usize = durations.values().sum();
    let mut w = CsvOut::create(&file("duration_ecdf.csv"), &["duration_s", "episodes", "ecdf"])?;
    let mut cumulative = 0;
    for (d, n) in &durations {
        cumulative += n;
        w.row([d.to_string(), n.to_string(), num(cumulative as f64 / with_duration as f64)])?;
    }
    w.finish()?;

    let mut by_category: BTreeMap<Category, (BTreeSet<&str>, usize)> = BTreeMap::new();
    let mut by_platform: BTreeMap<&str, (BTreeSet<&str>, usize)> = BTreeMap::new();
    for e in episodes {
        let c = by_category.entry(e.podcast.category).or_default();
        c.0.insert(&e.podcast.podcast_id);
        c.1 += 1;
        let p = by_platform.entry(&e.podcast.hosting_platform).or_default();
        p.0.insert(&e.podcast.podcast_id);
        p.1 += 1;
    }
    let mut w = CsvOut::create(&file("category_counts.csv"), &["category", "podcasts", "episodes"])?;
    for (c, (pods, n)) in &by_category {
        w.row([c.as_str().to_string(), pods.len().to_string(), n.to_string()])?;
    }
    w.finish()?;
    let mut w = CsvOut::create(&file("platform_counts.csv"), &["hosting_platform", "podcasts", "episodes"])?;
    for (p, (pods, n)) in &by_platform {
        w.row([p.to_string(), pods.len().to_string(), n.to_string()])?;
    }
    w.finish()?;

    let roles = role_count_summary(episodes);
    let mut w = CsvOut::create(
        &file("role_counts.csv"),
        &["category", "episodes", "zero_host_episodes", "mean_hosts", "mean_guests"],
    )?;
    let mut h = CsvOut::create(&file("role_histograms.csv"), &["category", "role", "count", "episodes"])?;
    let rows = std::iter::once(("all", &roles.overall)).chain(roles.by_category.iter().map(|(c, s)| (c.as_str(), s)));
    for (label, s) in rows {
        w.row([
            label.to_string(),
            s.episodes.to_string(),
            s.zero_host_episodes.to_string(),
            opt(s.mean_hosts),
            opt(s.mean_guests),
        ])?;
        for (role, hist) in [("host", &s.host_histogram), ("guest", &s.guest_histogram)] {
            for (count, n) in hist {
                h.row([label, role, &count.to_string(), &n.to_string()])?;
            }
        }
    }
    w.finish()?;
    h.finish()?;

    let f0: Vec<(Category, Option<f64>)> =
        episodes.iter().map(|e| (e.podcast.category, episode_feature_mean(&e.words, ProsodicFeature::F0))).collect();
    let summary = category_feature_summary(&f0);
    let mut w =
        CsvOut::create(&file("f0_by_category.csv"), &["category", "episodes", "mean_f0", "ci_low", "ci_high", "wide"])?;
    for r in &summary.rows {
        w.row([
            r.category.as_str().to_string(),
            r.episodes.to_string(),
            num(r.mean),
            num(r.ci_low),
            num(r.ci_high),
            r.wide.to_string(),
        ])?;
    }
    w.finish()?;

    Ok((outputs, episodes.len() - with_duration))
}
