/// Parses an episode duration in `SS`, `MM:SS` or `HH:MM:SS` form.
///
/// The leading component is unbounded (feeds write `90:00`); later components
/// must be below 60. Anything else, including negative or non-numeric parts,
/// yields `None`.
pub fn parse_duration(raw: &str) -> Option<u64> {
    let raw = raw.trim();
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.is_empty() || parts.len() > 3 {
        return None;
    }
    let mut total: u64 = 0;
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let v: u64 = part.parse().ok()?;
        if i > 0 && v >= 60 {
            return None;
        }
        total = total.checked_mul(60)?.checked_add(v)?;
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn accepted_forms() {
        assert_eq!(parse_duration("90"), Some(90));
        assert_eq!(parse_duration("30:00"), Some(1800));
        assert_eq!(parse_duration("01:02:03"), Some(3600 + 2 * 60 + 3));
        assert_eq!(parse_duration(" 0 "), Some(0));
        assert_eq!(parse_duration("90:00"), Some(5400));
    }

    #[test]
    fn rejected_forms() {
        for raw in ["", "-5", "1:-2", "abc", "1:2:3:4", "12:75", "1.5", "1::2", "99999999999999999999"] {
            assert_eq!(parse_duration(raw), None, "{raw:?}");
        }
    }

    proptest! {
        #[test]
        fn total_and_deterministic(raw in ".{0,12}") {
            prop_assert_eq!(parse_duration(&raw), parse_duration(&raw));
        }

        #[test]
        fn hms_arithmetic(h in 0u64..100, m in 0u64..60, s in 0u64..60) {
            let raw = format!("{h:02}:{m:02}:{s:02}");
            prop_assert_eq!(parse_duration(&raw), Some(h * 3600 + m * 60 + s));
        }
    }
}
