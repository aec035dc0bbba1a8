use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{name_key, name_probability, NameStats, NetworkError};
use crate::model::{Category, EpisodeRecord, RoleLabel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BipartiteConfig {
    /// Guests are kept only if p(name) is strictly below this quantile of
    /// the distinct guest-name probabilities. 0.5 is the lower median.
    pub name_prob_quantile: f64,
}

impl Default for BipartiteConfig {
    fn default() -> Self {
        BipartiteConfig { name_prob_quantile: 0.5 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ExclusionCounts {
    /// Guest labels seen, one per (episode, name).
    pub guest_labels: usize,
    /// Distinct guest names before filtering.
    pub distinct_guests: usize,
    /// Distinct names dropped for being too common.
    pub common_names: usize,
    /// (podcast, guest) pairs dropped because the name hosts elsewhere in
    /// the same podcast.
    pub host_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BipartiteGraph {
    /// Every podcast in the corpus with its category.
    pub podcasts: BTreeMap<String, Category>,
    /// Guest key → display name (first spelling seen).
    pub guests: BTreeMap<String, String>,
    /// (podcast_id, guest key), deduplicated.
    pub edges: BTreeSet<(String, String)>,
    pub excluded: ExclusionCounts,
    /// The probability cut-off applied; `None` when there were no guests.
    pub threshold: Option<f64>,
}

impl BipartiteGraph {
    /// Graph with the given edges and no filtering bookkeeping.
    pub fn from_edges(podcasts: BTreeMap<String, Category>, edges: impl IntoIterator<Item = (String, String)>) -> Self {
        let edges: BTreeSet<(String, String)> = edges.into_iter().collect();
        let guests = edges.iter().map(|(_, g)| (g.clone(), g.clone())).collect();
        BipartiteGraph { podcasts, guests, edges, ..Default::default() }
    }
}

/// Builds the podcast–guest graph from per-episode role assignments.
///
/// A guest is any name labeled Guest, minus names whose probability is
/// not strictly below the configured quantile over distinct guest names,
/// minus (per podcast) names labeled Host in a different episode of that
/// podcast. Episodes are visited in episode-id order.
pub fn build_bipartite(
    episodes: &[EpisodeRecord],
    stats: &NameStats,
    config: &BipartiteConfig,
) -> Result<BipartiteGraph, NetworkError> {
    let q = config.name_prob_quantile;
    if !(q > 0.0 && q <= 1.0) {
        return Err(NetworkError::Quantile(q));
    }
    let mut order: Vec<&EpisodeRecord> = episodes.iter().collect();
    order.sort_by(|a, b| a.id().cmp(b.id()));

    let mut graph = BipartiteGraph::default();
    // podcast → host name key → episodes where it was a Host
    let mut hosts: BTreeMap<&str, BTreeMap<String, BTreeSet<&str>>> = BTreeMap::new();
    let mut appearances: Vec<(&str, &str, String)> = Vec::new();
    let mut display: BTreeMap<String, String> = BTreeMap::new();
    for ep in &order {
        graph.podcasts.insert(ep.podcast.podcast_id.clone(), ep.podcast.category);
        let pid = ep.podcast.podcast_id.as_str();
        for r in &ep.roles {
            let key = name_key(&r.name);
            match r.label {
                RoleLabel::Host => {
                    hosts.entry(pid).or_default().entry(key).or_default().insert(ep.id());
                }
                RoleLabel::Guest => {
                    display
                        .entry(key.clone())
                        .or_insert_with(|| r.name.split_whitespace().collect::<Vec<_>>().join(" "));
                    appearances.push((pid, ep.id(), key));
                }
                RoleLabel::Neither => {}
            }
        }
    }
    graph.excluded.guest_labels = appearances.len();
    graph.excluded.distinct_guests = display.len();

    let mut probs: Vec<(String, f64)> = Vec::with_capacity(display.len());
    for key in display.keys() {
        probs.push((key.clone(), name_probability(key, stats)?));
    }
    let mut sorted: Vec<f64> = probs.iter().map(|(_, p)| *p).collect();
    sorted.sort_by(f64::total_cmp);
    graph.threshold = (!sorted.is_empty()).then(|| {
        let idx = ((q * sorted.len() as f64).ceil() as usize).max(1) - 1;
        sorted[idx.min(sorted.len() - 1)]
    });
    let rare: BTreeSet<String> = match graph.threshold {
        Some(t) => probs.into_iter().filter(|(_, p)| *p < t).map(|(k, _)| k).collect(),
        None => BTreeSet::new(),
    };
    graph.excluded.common_names = display.len() - rare.len();

    let mut host_dropped = BTreeSet::new();
    for (pid, eid, key) in appearances {
        if !rare.contains(&key) {
            continue;
        }
        let hosts_elsewhere = hosts.get(pid).and_then(|m| m.get(&key)).is_some_and(|eps| eps.iter().any(|e| *e != eid));
        if hosts_elsewhere {
            host_dropped.insert((pid.to_string(), key));
            continue;
        }
        graph.guests.insert(key.clone(), display[&key].clone());
        graph.edges.insert((pid.to_string(), key));
    }
    graph.excluded.host_pairs = host_dropped.difference(&graph.edges).count();
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RoleAssignment;

    pub(crate) fn ep(pid: &str, n: usize, roles: &[(&str, RoleLabel)]) -> EpisodeRecord {
        let mut rec = crate::model::sample_record();
        rec.podcast.podcast_id = pid.into();
        rec.episode.podcast_id = pid.into();
        rec.episode.episode_id = format!("{pid}.e{n}");
        rec.roles = roles
            .iter()
            .map(|(name, label)| RoleAssignment {
                name: name.to_string(),
                label: *label,
                confidence: 0.9,
                source_episode: rec.episode.episode_id.clone(),
            })
            .collect();
        rec
    }

    fn stats_of(eps: &[EpisodeRecord]) -> NameStats {
        NameStats::from_names(eps.iter().flat_map(|e| e.roles.iter().map(|r| r.name.as_str())))
    }

    use RoleLabel::*;

    #[test]
    fn recurring_guest_gets_one_edge_per_podcast() {
        let mut eps = Vec::new();
        for i in 0..21 {
            eps.push(ep(&format!("p{}", i % 4), i, &[("Matt Ridley", Guest)]));
        }
        // Common-name guests to sit above the median.
        for i in 0..40 {
            eps.push(ep(
                &format!("p{}", i % 4),
                100 + i,
                &[("John Smith", Guest), ("John Doe", Guest), ("Jane Smith", Guest)],
            ));
        }
        let stats = stats_of(&eps);
        let g = build_bipartite(&eps, &stats, &BipartiteConfig::default()).unwrap();
        let ridley: Vec<_> = g.edges.iter().filter(|(_, k)| k == "matt ridley").collect();
        assert_eq!(ridley.len(), 4);
        assert_eq!(g.guests.get("matt ridley").map(String::as_str), Some("Matt Ridley"));
        assert!(g.edges.iter().all(|(_, k)| k == "matt ridley"));
        assert_eq!(g.excluded.distinct_guests, 4);
    }

    #[test]
    fn host_elsewhere_in_same_podcast_is_excluded() {
        let eps = vec![
            ep("p1", 1, &[("Jane Doe", Host)]),
            ep("p1", 2, &[("Jane Doe", Guest)]),
            ep("p2", 1, &[("Jane Doe", Guest)]),
            ep("p3", 1, &[("Ann Lee", Guest), ("Bob Lee", Guest), ("Cal Lee", Guest)]),
        ];
        let mut eps = eps;
        for i in 2..7 {
            eps.push(ep("p3", i, &[("John Smith", Guest)]));
        }
        let g = build_bipartite(&eps, &stats_of(&eps), &BipartiteConfig { name_prob_quantile: 1.0 }).unwrap();
        assert!(!g.edges.contains(&("p1".into(), "jane doe".into())));
        assert!(g.edges.contains(&("p2".into(), "jane doe".into())));
        assert_eq!(g.excluded.host_pairs, 1);
    }

    #[test]
    fn most_probable_name_is_excluded() {
        let eps = vec![
            ep("p1", 1, &[("John Smith", Guest), ("Ann Lee", Guest)]),
            ep("p2", 1, &[("John Smith", Guest), ("Bea Kay", Guest)]),
            ep("p3", 1, &[("John Smith", Guest), ("Cy Ode", Guest)]),
        ];
        let g = build_bipartite(&eps, &stats_of(&eps), &BipartiteConfig::default()).unwrap();
        assert!(!g.guests.contains_key("john smith"));
        // Four distinct guests; lower median is the 2nd smallest p, and the
        // three rare names tie there, so none is strictly below it.
        assert!(g.edges.is_empty());
        let g = build_bipartite(&eps, &stats_of(&eps), &BipartiteConfig { name_prob_quantile: 1.0 }).unwrap();
        assert_eq!(g.guests.len(), 3);
    }

    #[test]
    fn bad_quantile() {
        assert!(matches!(
            build_bipartite(&[], &NameStats::default(), &BipartiteConfig { name_prob_quantile: 0.0 }),
            Err(NetworkError::Quantile(_))
        ));
    }
}
