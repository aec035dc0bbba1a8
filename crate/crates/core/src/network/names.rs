use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::NetworkError;

/// Case-folded, whitespace-normalized form used to identify a person.
pub fn name_key(name: &str) -> String {
    name.split_whitespace().map(|t| t.to_lowercase()).collect::<Vec<_>>().join(" ")
}

/// First- and last-name token frequencies over all identified people.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct NameStats {
    pub first_counts: BTreeMap<String, u64>,
    pub last_counts: BTreeMap<String, u64>,
    pub total_first: u64,
    pub total_last: u64,
}

fn split(name: &str) -> Result<(String, String), NetworkError> {
    let key = name_key(name);
    let mut it = key.split(' ');
    match (it.next(), it.next(), it.next()) {
        (Some(f), Some(l), None) if !f.is_empty() => Ok((f.to_string(), l.to_string())),
        _ => Err(NetworkError::MalformedName(name.to_string())),
    }
}

impl NameStats {
    /// Counts one observation per name given. Names that are not two
    /// tokens are skipped.
    pub fn from_names<'a>(names: impl IntoIterator<Item = &'a str>) -> Self {
        let mut s = NameStats::default();
        for name in names {
            if let Ok((first, last)) = split(name) {
                *s.first_counts.entry(first).or_default() += 1;
                *s.last_counts.entry(last).or_default() += 1;
                s.total_first += 1;
                s.total_last += 1;
            }
        }
        s
    }
}

/// p(first) · p(last) under the token frequencies in `stats`.
pub fn name_probability(name: &str, stats: &NameStats) -> Result<f64, NetworkError> {
    let (first, last) = split(name)?;
    let f = *stats.first_counts.get(&first).ok_or(NetworkError::UnknownToken(first))?;
    let l = *stats.last_counts.get(&last).ok_or(NetworkError::UnknownToken(last))?;
    Ok((f as f64 / stats.total_first as f64) * (l as f64 / stats.total_last as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn frequency_product() {
        let s = NameStats::from_names(["John Smith", "john smith", "Matt Ridley", "Jane Doe"]);
        assert_eq!(s.total_first, 4);
        assert_eq!(name_probability("John Smith", &s).unwrap(), 0.25);
        assert_eq!(name_probability("Jane Ridley", &s).unwrap(), 1.0 / 16.0);
        assert!(matches!(name_probability("Ann Smith", &s), Err(NetworkError::UnknownToken(t)) if t == "ann"));
        assert!(matches!(name_probability("Cher", &s), Err(NetworkError::MalformedName(_))));
    }

    #[test]
    fn uniform_case() {
        let names: Vec<String> = (0..7).map(|i| format!("F{i} L{i}")).collect();
        let s = NameStats::from_names(names.iter().map(String::as_str));
        for n in &names {
            assert!((name_probability(n, &s).unwrap() - 1.0 / 49.0).abs() < 1e-15);
        }
    }

    proptest! {
        #[test]
        fn product_bounded_by_marginals(pairs in proptest::collection::vec((0u8..5, 0u8..5), 1..40)) {
            let names: Vec<String> = pairs.iter().map(|(f, l)| format!("f{f} l{l}")).collect();
            let s = NameStats::from_names(names.iter().map(String::as_str));
            for n in &names {
                let (f, l) = split(n).unwrap();
                let pf = s.first_counts[&f] as f64 / s.total_first as f64;
                let pl = s.last_counts[&l] as f64 / s.total_last as f64;
                let p = name_probability(n, &s).unwrap();
                prop_assert!(p <= pf.min(pl) + 1e-15);
            }
        }
    }
}
