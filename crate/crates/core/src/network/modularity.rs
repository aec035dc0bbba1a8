use std::collections::BTreeMap;

use super::{GuestGraph, NetworkError};
use crate::model::Category;

/// Community id per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    community: Vec<usize>,
}

impl Partition {
    pub fn new(community: Vec<usize>) -> Self {
        Partition { community }
    }

    /// Dense ids assigned in first-seen order of the labels.
    pub fn from_labels<L: Ord>(labels: &[L]) -> Self {
        let mut ids: BTreeMap<&L, usize> = BTreeMap::new();
        let community = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        Partition { community }
    }

    pub fn communities(&self) -> &[usize] {
        &self.community
    }

    pub fn len(&self) -> usize {
        self.community.len()
    }

    pub fn is_empty(&self) -> bool {
        self.community.is_empty()
    }
}

/// Newman modularity of a simple undirected graph, evaluated per
/// community as Σ_c [L_c/m − (d_c/2m)²].
pub fn modularity_of(node_count: usize, edges: &[(usize, usize)], community: &[usize]) -> Result<f64, NetworkError> {
    if community.len() != node_count {
        return Err(NetworkError::PartitionSize { expected: node_count, got: community.len() });
    }
    if edges.is_empty() {
        return Err(NetworkError::NoEdges);
    }
    let mut internal: BTreeMap<usize, f64> = BTreeMap::new();
    let mut degree: BTreeMap<usize, f64> = BTreeMap::new();
    for &(a, b) in edges {
        if a == b || a >= node_count || b >= node_count {
            return Err(NetworkError::InvalidEdge(a, b));
        }
        let (ca, cb) = (community[a], community[b]);
        if ca == cb {
            *internal.entry(ca).or_default() += 1.0;
        }
        *degree.entry(ca).or_default() += 1.0;
        *degree.entry(cb).or_default() += 1.0;
    }
    let m = edges.len() as f64;
    Ok(degree.iter().map(|(c, d)| internal.get(c).copied().unwrap_or(0.0) / m - (d / (2.0 * m)).powi(2)).sum())
}

pub fn modularity(graph: &GuestGraph, partition: &Partition) -> Result<f64, NetworkError> {
    modularity_of(graph.nodes.len(), &graph.edge_pairs(), partition.communities())
}

/// Modularity of the two-block partition {in c, not in c} for every
/// category in the registry.
pub fn category_modularity(graph: &GuestGraph) -> Result<BTreeMap<Category, f64>, NetworkError> {
    let edges = graph.edge_pairs();
    Category::ALL
        .iter()
        .map(|&c| {
            let blocks: Vec<usize> = graph.categories.iter().map(|&x| usize::from(x == c)).collect();
            modularity_of(graph.nodes.len(), &edges, &blocks).map(|q| (c, q))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Direct double sum over ordered node pairs.
    fn oracle(n: usize, edges: &[(usize, usize)], c: &[usize]) -> f64 {
        let mut a = vec![vec![0.0; n]; n];
        for &(i, j) in edges {
            a[i][j] = 1.0;
            a[j][i] = 1.0;
        }
        let k: Vec<f64> = a.iter().map(|r| r.iter().sum()).collect();
        let two_m: f64 = k.iter().sum();
        let mut q = 0.0;
        for i in 0..n {
            for j in 0..n {
                if c[i] == c[j] {
                    q += a[i][j] - k[i] * k[j] / two_m;
                }
            }
        }
        q / two_m
    }

    #[test]
    fn fixtures() {
        let e = [(0, 1), (2, 3)];
        assert_eq!(modularity_of(4, &e, &[0, 0, 1, 1]).unwrap(), 0.5);
        assert_eq!(modularity_of(4, &e, &[7, 7, 7, 7]).unwrap(), 0.0);
        assert!(matches!(modularity_of(3, &[], &[0, 0, 0]), Err(NetworkError::NoEdges)));
        assert!(matches!(modularity_of(3, &[(0, 0)], &[0, 0, 0]), Err(NetworkError::InvalidEdge(0, 0))));
        assert!(matches!(modularity_of(3, &[(0, 1)], &[0, 0]), Err(NetworkError::PartitionSize { .. })));
    }

    #[test]
    fn category_partitions() {
        // Two sports triangles and a news pair, joined by one bridge.
        let g = GuestGraph {
            nodes: (0..6).map(|i| format!("p{i}")).collect(),
            categories: vec![
                Category::Sports,
                Category::Sports,
                Category::Sports,
                Category::News,
                Category::News,
                Category::News,
            ],
            edges: [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)]
                .iter()
                .map(|&(a, b)| crate::network::GuestEdge { a, b, guests: ["x".to_string()].into() })
                .collect(),
        };
        let q = category_modularity(&g).unwrap();
        let blocks = [1, 1, 1, 0, 0, 0];
        assert!((q[&Category::Sports] - oracle(6, &g.edge_pairs(), &blocks)).abs() < 1e-12);
        assert!(q[&Category::Sports] > 0.0);
        assert_eq!(q[&Category::Arts], 0.0);
    }

    fn graph_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<usize>)> {
        (2usize..=6).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let np = pairs.len();
            (
                Just(n),
                proptest::collection::vec(any::<bool>(), np).prop_map(move |keep| {
                    pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| *p).collect::<Vec<_>>()
                }),
                proptest::collection::vec(0usize..3, n),
            )
        })
    }

    proptest! {
        #[test]
        fn matches_double_sum((n, edges, c) in graph_strategy()) {
            prop_assume!(!edges.is_empty());
            let q = modularity_of(n, &edges, &c).unwrap();
            prop_assert!((q - oracle(n, &edges, &c)).abs() < 1e-12);
            let relabeled: Vec<usize> = c.iter().map(|x| 10 - x).collect();
            prop_assert!((q - modularity_of(n, &edges, &relabeled).unwrap()).abs() < 1e-12);
            prop_assert!(modularity_of(n, &edges, &vec![0; n]).unwrap().abs() < 1e-12);
        }
    }
}
