use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AgreementError {
    #[error("no item carries two or more labels")]
    NoPairableValues,
    #[error("all pairable labels are identical; expected disagreement is zero")]
    NoExpectedDisagreement,
}

/// Nominal Krippendorff's alpha over an item × coder matrix with missing
/// entries (`None`). Items with fewer than two labels are ignored.
pub fn krippendorff_alpha<L: Ord>(items: &[Vec<Option<L>>]) -> Result<f64, AgreementError> {
    let mut codes: BTreeMap<&L, usize> = BTreeMap::new();
    for v in items.iter().flatten().flatten() {
        let next = codes.len();
        codes.entry(v).or_insert(next);
    }
    let k = codes.len();
    let mut o = vec![vec![0.0f64; k]; k];
    for item in items {
        let vals: Vec<usize> = item.iter().flatten().map(|v| codes[v]).collect();
        let m = vals.len();
        if m < 2 {
            continue;
        }
        let mut counts = vec![0usize; k];
        for &v in &vals {
            counts[v] += 1;
        }
        let w = 1.0 / (m as f64 - 1.0);
        for c in 0..k {
            if counts[c] == 0 {
                continue;
            }
            for d in 0..k {
                let pairs = if c == d { counts[c] * (counts[c] - 1) } else { counts[c] * counts[d] };
                o[c][d] += pairs as f64 * w;
            }
        }
    }
    let n_c: Vec<f64> = o.iter().map(|row| row.iter().sum()).collect();
    let n: f64 = n_c.iter().sum();
    if n == 0.0 {
        return Err(AgreementError::NoPairableValues);
    }
    let mut observed = 0.0;
    let mut expected = 0.0;
    for c in 0..k {
        for d in 0..k {
            if c != d {
                observed += o[c][d];
                expected += n_c[c] * n_c[d];
            }
        }
    }
    if expected == 0.0 {
        return Err(AgreementError::NoExpectedDisagreement);
    }
    Ok(1.0 - (n - 1.0) * observed / expected)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Alpha from explicit pairwise disagreements, no coincidence matrix.
    pub(crate) fn pairwise_alpha<L: PartialEq>(items: &[Vec<Option<L>>]) -> Option<f64> {
        let units: Vec<Vec<&L>> =
            items.iter().map(|u| u.iter().flatten().collect::<Vec<_>>()).filter(|u| u.len() >= 2).collect();
        let pooled: Vec<&L> = units.iter().flatten().copied().collect();
        let n = pooled.len() as f64;
        if n == 0.0 {
            return None;
        }
        let mut d_o = 0.0;
        for u in &units {
            let mut dis = 0.0;
            for i in 0..u.len() {
                for j in 0..u.len() {
                    if i != j && u[i] != u[j] {
                        dis += 1.0;
                    }
                }
            }
            d_o += dis / (u.len() as f64 - 1.0);
        }
        d_o /= n;
        let mut d_e = 0.0;
        for i in 0..pooled.len() {
            for j in 0..pooled.len() {
                if i != j && pooled[i] != pooled[j] {
                    d_e += 1.0;
                }
            }
        }
        d_e /= n * (n - 1.0);
        if d_e == 0.0 {
            return None;
        }
        Some(1.0 - d_o / d_e)
    }

    fn m(rows: &[&[Option<&'static str>]]) -> Vec<Vec<Option<&'static str>>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn hand_computed() {
        let a = krippendorff_alpha(&m(&[&[Some("a"), Some("a")], &[Some("b"), Some("b")], &[Some("a"), Some("b")]]))
            .unwrap();
        assert!((a - 4.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn perfect_agreement() {
        let a = krippendorff_alpha(&m(&[&[Some("a"), Some("a"), None], &[Some("b"), None, Some("b")]])).unwrap();
        assert_eq!(a, 1.0);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(
            krippendorff_alpha(&m(&[&[Some("a"), Some("a")], &[Some("a"), Some("a")]])),
            Err(AgreementError::NoExpectedDisagreement)
        );
        assert_eq!(
            krippendorff_alpha(&m(&[&[Some("a"), None], &[None, Some("b")]])),
            Err(AgreementError::NoPairableValues)
        );
    }

    #[test]
    fn matches_pairwise_oracle_exhaustively() {
        // 3 items × 2 coders over {missing, a, b}: 3^6 matrices.
        let cell = [None, Some(0u8), Some(1u8)];
        for code in 0..3usize.pow(6) {
            let mut c = code;
            let items: Vec<Vec<Option<u8>>> = (0..3)
                .map(|_| {
                    (0..2)
                        .map(|_| {
                            let v = cell[c % 3];
                            c /= 3;
                            v
                        })
                        .collect()
                })
                .collect();
            match (krippendorff_alpha(&items), pairwise_alpha(&items)) {
                (Ok(a), Some(b)) => assert!((a - b).abs() < 1e-12, "{items:?}: {a} vs {b}"),
                (Err(_), None) => {}
                (x, y) => panic!("{items:?}: {x:?} vs {y:?}"),
            }
        }
    }
}
