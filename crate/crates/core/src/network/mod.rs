//! Podcast–guest bipartite graph, its one-mode projection onto podcasts,
//! and modularity of category partitions.

mod bipartite;
mod export;
mod modularity;
mod names;
mod projection;

pub use bipartite::{build_bipartite, BipartiteConfig, BipartiteGraph, ExclusionCounts};
pub use export::{write_edges_csv, write_modularity_csv, write_nodes_csv};
pub use modularity::{category_modularity, modularity, modularity_of, Partition};
pub use names::{name_key, name_probability, NameStats};
pub use projection::{project_one_mode, GuestEdge, GuestGraph};

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum NetworkError {
    #[error("name token {0:?} does not occur in the name statistics")]
    UnknownToken(String),
    #[error("{0:?} is not a two-token name")]
    MalformedName(String),
    #[error("graph has no edges; modularity is undefined")]
    NoEdges,
    #[error("partition covers {got} nodes but the graph has {expected}")]
    PartitionSize { expected: usize, got: usize },
    #[error("edge ({0}, {1}) is a self-loop or references a missing node")]
    InvalidEdge(usize, usize),
    #[error("quantile {0} outside (0, 1]")]
    Quantile(f64),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}
