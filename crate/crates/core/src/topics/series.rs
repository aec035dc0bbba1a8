use std::collections::{BTreeMap, BTreeSet};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::TopicsError;
use crate::stats::{mean, proportion_interval, t_interval, Interval};
use crate::text::{contains_sequence, normalized_tokens};

/// How an episode contributes to a daily topic value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "threshold")]
pub enum SeriesMeasure {
    /// Mean theta mass on the selected topics, in percent.
    ThetaMass,
    /// Percent of episodes whose mass on the selected topics is at least
    /// the threshold.
    ShareAbove(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub date: NaiveDate,
    /// `None` on days without data.
    pub value: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub n: usize,
    /// The interval could not be estimated from the data (a single
    /// observation) and spans the whole valid range.
    pub wide: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct TimeSeries {
    /// One point per calendar day, strictly increasing.
    pub points: Vec<SeriesPoint>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SeriesPair {
    pub daily: TimeSeries,
    pub rolled: TimeSeries,
}

const PERCENT: (f64, f64) = (0.0, 100.0);

fn point(date: NaiveDate, n: usize, iv: Option<Interval>) -> SeriesPoint {
    SeriesPoint {
        date,
        value: iv.map(|i| i.estimate),
        ci_low: iv.map(|i| i.low),
        ci_high: iv.map(|i| i.high),
        n,
        wide: iv.is_some_and(|i| i.degenerate),
    }
}

fn calendar<T>(groups: &BTreeMap<NaiveDate, T>) -> Vec<NaiveDate> {
    match (groups.keys().next(), groups.keys().next_back()) {
        (Some(&first), Some(&last)) => first.iter_days().take_while(|d| *d <= last).collect(),
        _ => Vec::new(),
    }
}

fn percent_of_proportion(successes: usize, n: usize) -> Option<Interval> {
    let mut iv = proportion_interval(successes, n)?;
    iv.estimate *= 100.0;
    if n == 1 {
        (iv.low, iv.high) = PERCENT;
    } else {
        iv.low *= 100.0;
        iv.high *= 100.0;
    }
    Some(iv)
}

/// Trailing rolling mean over `window` days. Values and bounds are each
/// averaged over the days in the window that have data; a day is a gap
/// only when its whole window is empty.
pub fn roll(daily: &TimeSeries, window: usize) -> Result<TimeSeries, TopicsError> {
    if window == 0 {
        return Err(TopicsError::InvalidWindow);
    }
    let pts = &daily.points;
    let mut out = Vec::with_capacity(pts.len());
    for (i, p) in pts.iter().enumerate() {
        let lo_date = p.date - chrono::Days::new(window as u64 - 1);
        let span: Vec<&SeriesPoint> =
            pts[..=i].iter().rev().take_while(|q| q.date >= lo_date).filter(|q| q.value.is_some()).collect();
        let avg = |f: fn(&SeriesPoint) -> Option<f64>| mean(&span.iter().filter_map(|q| f(q)).collect::<Vec<_>>());
        out.push(SeriesPoint {
            date: p.date,
            value: avg(|q| q.value),
            ci_low: avg(|q| q.ci_low),
            ci_high: avg(|q| q.ci_high),
            n: span.iter().map(|q| q.n).sum(),
            wide: span.iter().any(|q| q.wide),
        });
    }
    Ok(TimeSeries { points: out })
}

/// Daily and rolled percentages of theta mass on `topics`.
pub fn topic_timeseries(
    episodes: &[(NaiveDate, &[f64])],
    topics: &[usize],
    window: usize,
    measure: SeriesMeasure,
) -> Result<SeriesPair, TopicsError> {
    let mut groups: BTreeMap<NaiveDate, Vec<f64>> = BTreeMap::new();
    let wanted: BTreeSet<usize> = topics.iter().copied().collect();
    for (date, theta) in episodes {
        if let Some(&bad) = wanted.iter().find(|&&t| t >= theta.len()) {
            return Err(TopicsError::TopicOutOfRange { topic: bad, k: theta.len() });
        }
        let mass: f64 = wanted.iter().map(|&t| theta[t]).sum();
        groups.entry(*date).or_default().push(mass);
    }
    let daily = calendar(&groups)
        .into_iter()
        .map(|date| {
            let masses = groups.get(&date).map(Vec::as_slice).unwrap_or(&[]);
            let iv = match measure {
                SeriesMeasure::ThetaMass => {
                    let pct: Vec<f64> = masses.iter().map(|m| m * 100.0).collect();
                    t_interval(&pct, Some(PERCENT), Some(PERCENT))
                }
                SeriesMeasure::ShareAbove(th) => {
                    percent_of_proportion(masses.iter().filter(|&&m| m >= th).count(), masses.len())
                }
            };
            point(date, masses.len(), iv)
        })
        .collect();
    let daily = TimeSeries { points: daily };
    let rolled = roll(&daily, window)?;
    Ok(SeriesPair { daily, rolled })
}

/// Whether the normalized phrase occurs as a contiguous run in the
/// normalized transcript tokens.
pub fn phrase_mentioned(transcript: &[String], phrase: &str) -> Result<bool, TopicsError> {
    let needle = normalized_tokens(phrase);
    if needle.is_empty() {
        return Err(TopicsError::EmptyPhrase);
    }
    Ok(contains_sequence(transcript, &needle))
}

/// Daily and rolled percent of episodes that mention the phrase.
pub fn mention_rate(episodes: &[(NaiveDate, bool)], window: usize) -> Result<SeriesPair, TopicsError> {
    let mut groups: BTreeMap<NaiveDate, (usize, usize)> = BTreeMap::new();
    for &(date, hit) in episodes {
        let g = groups.entry(date).or_default();
        g.0 += usize::from(hit);
        g.1 += 1;
    }
    let daily = calendar(&groups)
        .into_iter()
        .map(|date| {
            let (hits, n) = groups.get(&date).copied().unwrap_or((0, 0));
            point(date, n, percent_of_proportion(hits, n))
        })
        .collect();
    let daily = TimeSeries { points: daily };
    let rolled = roll(&daily, window)?;
    Ok(SeriesPair { daily, rolled })
}

/// Fraction of podcasts with at least one mentioning episode.
pub fn show_mention_share<'a>(episodes: impl IntoIterator<Item = (&'a str, bool)>) -> Result<f64, TopicsError> {
    let mut shows: BTreeMap<&str, bool> = BTreeMap::new();
    for (podcast, hit) in episodes {
        *shows.entry(podcast).or_default() |= hit;
    }
    if shows.is_empty() {
        return Err(TopicsError::NoPodcasts);
    }
    Ok(shows.values().filter(|h| **h).count() as f64 / shows.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn day(d: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(2020, 5, d).unwrap()
    }

    fn series(values: &[Option<f64>]) -> TimeSeries {
        TimeSeries {
            points: values
                .iter()
                .enumerate()
                .map(|(i, v)| SeriesPoint {
                    date: day(i as u32 + 1),
                    value: *v,
                    ci_low: v.map(|x| x - 1.0),
                    ci_high: v.map(|x| x + 1.0),
                    n: usize::from(v.is_some()),
                    wide: false,
                })
                .collect(),
        }
    }

    fn values(s: &TimeSeries) -> Vec<Option<f64>> {
        s.points.iter().map(|p| p.value).collect()
    }

    #[test]
    fn rolling_mean() {
        let r = roll(&series(&[Some(1.0), Some(2.0), Some(3.0), Some(4.0)]), 3).unwrap();
        assert_eq!(values(&r), vec![Some(1.0), Some(1.5), Some(2.0), Some(3.0)]);
        let r = roll(&series(&[Some(5.0); 6]), 3).unwrap();
        assert!(values(&r).iter().all(|v| *v == Some(5.0)));
        let r = roll(&series(&[Some(1.0), None, None, None, Some(2.0)]), 3).unwrap();
        assert_eq!(values(&r), vec![Some(1.0), Some(1.0), Some(1.0), None, Some(2.0)]);
        assert!(roll(&series(&[]), 0).is_err());
    }

    #[test]
    fn theta_series_with_gap_and_single_day() {
        let a = [0.2, 0.3, 0.5];
        let b = [0.4, 0.3, 0.3];
        let eps: Vec<(NaiveDate, &[f64])> = vec![(day(1), &a), (day(1), &b), (day(3), &a)];
        let s = topic_timeseries(&eps, &[0, 1], 3, SeriesMeasure::ThetaMass).unwrap();
        assert_eq!(s.daily.points.len(), 3);
        assert!((s.daily.points[0].value.unwrap() - 60.0).abs() < 1e-9);
        assert_eq!(s.daily.points[1].value, None);
        let single = &s.daily.points[2];
        assert!(single.wide);
        assert_eq!((single.ci_low, single.ci_high), (Some(0.0), Some(100.0)));
        let share = topic_timeseries(&eps, &[0, 1], 3, SeriesMeasure::ShareAbove(0.6)).unwrap();
        assert_eq!(share.daily.points[0].value, Some(50.0));
        assert!(matches!(
            topic_timeseries(&eps, &[3], 3, SeriesMeasure::ThetaMass),
            Err(TopicsError::TopicOutOfRange { topic: 3, k: 3 })
        ));
    }

    #[test]
    fn mention_rates() {
        let eps = [(day(1), true), (day(1), false), (day(1), false), (day(1), false), (day(2), false), (day(2), false)];
        let s = mention_rate(&eps, 3).unwrap();
        assert_eq!(s.daily.points[0].value, Some(25.0));
        assert_eq!(s.daily.points[1].value, Some(0.0));
        assert_eq!(s.daily.points[1].ci_low, Some(0.0));
        let t: Vec<String> = normalized_tokens("Today we remember George Floyd.");
        assert!(phrase_mentioned(&t, "george floyd").unwrap());
        assert!(phrase_mentioned(&t, "GEORGE FLOYD").unwrap());
        assert!(!phrase_mentioned(&t, "floyd george").unwrap());
        assert!(matches!(phrase_mentioned(&t, " ... "), Err(TopicsError::EmptyPhrase)));
    }

    #[test]
    fn show_share() {
        let mut eps: Vec<(String, bool)> = (0..10).map(|i| (format!("p{i}"), i < 2)).collect();
        eps.push(("p0".into(), true));
        let share = show_mention_share(eps.iter().map(|(p, h)| (p.as_str(), *h))).unwrap();
        assert_eq!(share, 0.2);
        assert!(matches!(show_mention_share(std::iter::empty()), Err(TopicsError::NoPodcasts)));
    }

    proptest! {
        #[test]
        fn rolling_commutes_with_shift(
            xs in proptest::collection::vec(proptest::option::weighted(0.8, -50.0f64..50.0), 1..30),
            c in -20.0f64..20.0,
            w in 1usize..6,
        ) {
            let base = roll(&series(&xs), w).unwrap();
            let shifted: Vec<Option<f64>> = xs.iter().map(|v| v.map(|x| x + c)).collect();
            let moved = roll(&series(&shifted), w).unwrap();
            for (a, b) in base.points.iter().zip(&moved.points) {
                match (a.value, b.value) {
                    (Some(x), Some(y)) => prop_assert!((x + c - y).abs() < 1e-9),
                    (None, None) => {}
                    _ => prop_assert!(false),
                }
                if let (Some(v), Some(lo), Some(hi)) = (a.value, a.ci_low, a.ci_high) {
                    prop_assert!(lo <= v + 1e-12 && v <= hi + 1e-12);
                }
            }
        }

        #[test]
        fn rates_stay_in_range(hits in proptest::collection::vec((1u32..10, any::<bool>()), 1..60)) {
            let eps: Vec<(NaiveDate, bool)> = hits.iter().map(|(d, h)| (day(*d), *h)).collect();
            let s = mention_rate(&eps, 3).unwrap();
            for p in s.daily.points.iter().chain(&s.rolled.points) {
                if let (Some(v), Some(lo), Some(hi)) = (p.value, p.ci_low, p.ci_high) {
                    prop_assert!((0.0..=100.0).contains(&v));
                    prop_assert!(0.0 <= lo && lo <= v && v <= hi && hi <= 100.0);
                }
            }
        }
    }
}
