//! Small descriptive-statistics helpers: means and 95% confidence intervals.

use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

/// Two-sided 95% level used throughout the analytics.
pub const CONFIDENCE: f64 = 0.95;

/// A point estimate with its interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub estimate: f64,
    pub low: f64,
    pub high: f64,
    /// Set when the sample is too small for a spread estimate.
    pub degenerate: bool,
}

pub fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    Some(values.iter().sum::<f64>() / values.len() as f64)
}

/// Unbiased sample variance; `None` for fewer than two values.
pub fn sample_variance(values: &[f64]) -> Option<f64> {
    if values.len() < 2 {
        return None;
    }
    let m = mean(values)?;
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    Some(ss / (values.len() - 1) as f64)
}

fn t_quantile(df: f64) -> f64 {
    let q = 1.0 - (1.0 - CONFIDENCE) / 2.0;
    StudentsT::new(0.0, 1.0, df).expect("degrees of freedom are positive").inverse_cdf(q)
}

fn z_quantile() -> f64 {
    let q = 1.0 - (1.0 - CONFIDENCE) / 2.0;
    Normal::standard().inverse_cdf(q)
}

/// t-based interval for the mean of `values`.
///
/// With a single value there is no spread estimate; the interval collapses
/// to `fallback` (when given) or to the point, and is marked degenerate.
/// Bounds are clamped to `range` when provided.
pub fn t_interval(values: &[f64], range: Option<(f64, f64)>, fallback: Option<(f64, f64)>) -> Option<Interval> {
    let m = mean(values)?;
    let (mut low, mut high, degenerate) = match sample_variance(values) {
        Some(var) => {
            let half = t_quantile((values.len() - 1) as f64) * (var / values.len() as f64).sqrt();
            (m - half, m + half, false)
        }
        None => {
            let (lo, hi) = fallback.unwrap_or((m, m));
            (lo.min(m), hi.max(m), true)
        }
    };
    if let Some((lo, hi)) = range {
        low = low.clamp(lo, hi);
        high = high.clamp(lo, hi);
    }
    Some(Interval { estimate: m, low: low.min(m), high: high.max(m), degenerate })
}

/// Normal-approximation (Wald) interval for a proportion `successes / n`,
/// clamped to `[0, 1]`.
pub fn proportion_interval(successes: usize, n: usize) -> Option<Interval> {
    if n == 0 {
        return None;
    }
    let p = successes as f64 / n as f64;
    let half = z_quantile() * (p * (1.0 - p) / n as f64).sqrt();
    Some(Interval {
        estimate: p,
        low: (p - half).clamp(0.0, 1.0),
        high: (p + half).clamp(0.0, 1.0),
        degenerate: n == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_interval_known_value() {
        // mean 2, s = 1, n = 3, t(0.975, 2) = 4.302652729911275
        let iv = t_interval(&[1.0, 2.0, 3.0], None, None).unwrap();
        assert!((iv.estimate - 2.0).abs() < 1e-12);
        let half = 4.302652729911275 / 3f64.sqrt();
        assert!((iv.high - (2.0 + half)).abs() < 1e-9);
        assert!((iv.low - (2.0 - half)).abs() < 1e-9);
    }

    #[test]
    fn single_value_uses_fallback() {
        let iv = t_interval(&[40.0], Some((0.0, 100.0)), Some((0.0, 100.0))).unwrap();
        assert!(iv.degenerate);
        assert_eq!((iv.low, iv.high), (0.0, 100.0));
    }

    #[test]
    fn proportion_clamps() {
        let iv = proportion_interval(0, 10).unwrap();
        assert_eq!((iv.low, iv.estimate, iv.high), (0.0, 0.0, 0.0));
        let iv = proportion_interval(1, 4).unwrap();
        assert!(iv.low >= 0.0 && iv.low < 0.25 && iv.high > 0.25);
        assert!((z_quantile() - 1.959963984540054).abs() < 1e-9);
    }
}
