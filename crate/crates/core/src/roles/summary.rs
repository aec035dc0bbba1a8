use std::collections::BTreeMap;

use serde::Serialize;

use crate::model::{Category, EpisodeRecord, RoleLabel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpisodeRoleCounts {
    pub episode_id: String,
    pub category: Category,
    pub hosts: usize,
    pub guests: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct CategoryRoleStats {
    pub episodes: usize,
    /// Host count → number of episodes, zero included.
    pub host_histogram: BTreeMap<usize, usize>,
    pub guest_histogram: BTreeMap<usize, usize>,
    /// Mean hosts over episodes with at least one host.
    pub mean_hosts: Option<f64>,
    pub mean_guests: Option<f64>,
    pub zero_host_episodes: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RoleCountSummary {
    pub episodes: Vec<EpisodeRoleCounts>,
    pub by_category: BTreeMap<Category, CategoryRoleStats>,
    pub overall: CategoryRoleStats,
}

impl CategoryRoleStats {
    fn from_counts<'a>(counts: impl Iterator<Item = &'a EpisodeRoleCounts>) -> Self {
        let mut s = CategoryRoleStats::default();
        let (mut host_sum, mut guest_sum) = (0usize, 0usize);
        for c in counts {
            s.episodes += 1;
            *s.host_histogram.entry(c.hosts).or_default() += 1;
            *s.guest_histogram.entry(c.guests).or_default() += 1;
            if c.hosts == 0 {
                s.zero_host_episodes += 1;
            }
            host_sum += c.hosts;
            guest_sum += c.guests;
        }
        let hosted = s.episodes - s.zero_host_episodes;
        s.mean_hosts = (hosted > 0).then(|| host_sum as f64 / hosted as f64);
        s.mean_guests = (s.episodes > 0).then(|| guest_sum as f64 / s.episodes as f64);
        s
    }
}

/// Counts Host and Guest assignments per episode and summarizes them per
/// category and overall.
pub fn role_count_summary(episodes: &[EpisodeRecord]) -> RoleCountSummary {
    let counts: Vec<EpisodeRoleCounts> = episodes
        .iter()
        .map(|e| EpisodeRoleCounts {
            episode_id: e.id().to_string(),
            category: e.podcast.category,
            hosts: e.roles.iter().filter(|r| r.label == RoleLabel::Host).count(),
            guests: e.roles.iter().filter(|r| r.label == RoleLabel::Guest).count(),
        })
        .collect();
    let mut by_category = BTreeMap::new();
    for cat in counts.iter().map(|c| c.category).collect::<std::collections::BTreeSet<_>>() {
        by_category.insert(cat, CategoryRoleStats::from_counts(counts.iter().filter(|c| c.category == cat)));
    }
    let overall = CategoryRoleStats::from_counts(counts.iter());
    RoleCountSummary { episodes: counts, by_category, overall }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RoleAssignment;

    fn ep(id: &str, hosts: usize, guests: usize) -> EpisodeRecord {
        let mut rec = crate::model::sample_record();
        rec.episode.episode_id = id.into();
        rec.roles.clear();
        let mut push = |label, n| {
            for i in 0..n {
                rec.roles.push(RoleAssignment {
                    name: format!("Name {label:?}{i}"),
                    label,
                    confidence: 0.9,
                    source_episode: id.into(),
                });
            }
        };
        push(RoleLabel::Host, hosts);
        push(RoleLabel::Guest, guests);
        rec
    }

    #[test]
    fn counts_and_means() {
        let s = role_count_summary(&[ep("a", 1, 1), ep("b", 0, 3), ep("c", 2, 0)]);
        assert_eq!((s.episodes[0].hosts, s.episodes[0].guests), (1, 1));
        let sports = &s.by_category[&Category::Sports];
        assert_eq!(sports.mean_hosts, Some(1.5));
        assert_eq!(sports.host_histogram.get(&0), Some(&1));
        assert_eq!(sports.zero_host_episodes, 1);
        assert!((sports.mean_guests.unwrap() - 4.0 / 3.0).abs() < 1e-12);

        let s = role_count_summary(&[ep("a", 1, 1), ep("b", 1, 3)]);
        assert_eq!(s.overall.mean_guests, Some(2.0));
    }

    #[test]
    fn all_hostless() {
        let s = role_count_summary(&[ep("a", 0, 0)]);
        assert_eq!(s.overall.mean_hosts, None);
        assert_eq!(s.overall.host_histogram.get(&0), Some(&1));
    }
}
