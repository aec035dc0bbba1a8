use std::collections::{BTreeMap, BTreeSet};

use super::BipartiteGraph;
use crate::model::Category;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuestEdge {
    /// Node indices with `a < b`.
    pub a: usize,
    pub b: usize,
    /// Display names of the guests both podcasts hosted.
    pub guests: BTreeSet<String>,
}

/// One-mode podcast network: podcasts are linked when they share a guest.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GuestGraph {
    /// Podcast ids, sorted.
    pub nodes: Vec<String>,
    pub categories: Vec<Category>,
    /// Sorted by (a, b).
    pub edges: Vec<GuestEdge>,
}

impl GuestGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut k = vec![0; self.nodes.len()];
        for e in &self.edges {
            k[e.a] += 1;
            k[e.b] += 1;
        }
        k
    }

    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.a, e.b)).collect()
    }
}

/// Projects the bipartite graph onto podcasts. Podcasts that share no
/// guest with any other podcast are left out.
pub fn project_one_mode(bipartite: &BipartiteGraph) -> GuestGraph {
    let mut by_guest: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (pid, guest) in &bipartite.edges {
        by_guest.entry(guest).or_default().push(pid);
    }
    let mut pairs: BTreeMap<(&str, &str), BTreeSet<String>> = BTreeMap::new();
    for (guest, podcasts) in &by_guest {
        // podcasts arrive sorted because edges are a BTreeSet of (podcast, guest)
        for i in 0..podcasts.len() {
            for j in i + 1..podcasts.len() {
                let name = bipartite.guests.get(*guest).cloned().unwrap_or_else(|| guest.to_string());
                pairs.entry((podcasts[i], podcasts[j])).or_default().insert(name);
            }
        }
    }
    let nodes: Vec<String> =
        pairs.keys().flat_map(|(a, b)| [*a, *b]).collect::<BTreeSet<_>>().into_iter().map(String::from).collect();
    let index: BTreeMap<&str, usize> = nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let categories = nodes.iter().map(|n| bipartite.podcasts.get(n).copied().unwrap_or(Category::Unknown)).collect();
    let edges = pairs.into_iter().map(|((a, b), guests)| GuestEdge { a: index[a], b: index[b], guests }).collect();
    GuestGraph { nodes, categories, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(edges: &[(&str, &str)]) -> BipartiteGraph {
        let podcasts = edges.iter().map(|(p, _)| (p.to_string(), Category::Sports)).collect();
        BipartiteGraph::from_edges(podcasts, edges.iter().map(|(p, g)| (p.to_string(), g.to_string())))
    }

    #[test]
    fn minimal_projection() {
        let g = project_one_mode(&graph(&[("p1", "g"), ("p2", "g"), ("p3", "h")]));
        assert_eq!(g.nodes, vec!["p1", "p2"]);
        assert_eq!(g.edges, vec![GuestEdge { a: 0, b: 1, guests: ["g".to_string()].into() }]);
    }

    #[test]
    fn shared_guest_makes_a_triangle() {
        let g = project_one_mode(&graph(&[("p1", "g"), ("p2", "g"), ("p3", "g"), ("p1", "h"), ("p2", "h")]));
        assert_eq!(g.edge_pairs(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(g.edges[0].guests.len(), 2);
        assert_eq!(g.degrees(), vec![2, 2, 2]);
    }

    proptest! {
        #[test]
        fn adding_an_edge_never_removes_one(
            edges in proptest::collection::vec((0u8..6, 0u8..6), 0..20),
            extra in (0u8..6, 0u8..6),
        ) {
            let named: Vec<(String, String)> = edges.iter().map(|(p, g)| (format!("p{p}"), format!("g{g}"))).collect();
            let before = project_one_mode(&BipartiteGraph::from_edges(BTreeMap::new(), named.clone()));
            let mut more = named;
            more.push((format!("p{}", extra.0), format!("g{}", extra.1)));
            let after = project_one_mode(&BipartiteGraph::from_edges(BTreeMap::new(), more));
            let set = |g: &GuestGraph| g.edges.iter().map(|e| (g.nodes[e.a].clone(), g.nodes[e.b].clone())).collect::<BTreeSet<_>>();
            prop_assert!(set(&before).is_subset(&set(&after)));
            for e in &after.edges {
                prop_assert!(e.a < e.b && !e.guests.is_empty());
            }
        }
    }
}
