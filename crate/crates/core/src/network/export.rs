use std::collections::BTreeMap;
use std::path::Path;

use super::{GuestGraph, NetworkError};
use crate::model::Category;

fn writer(path: &Path) -> Result<csv::Writer<std::fs::File>, NetworkError> {
    csv::Writer::from_path(path).map_err(|source| NetworkError::Csv { path: path.to_path_buf(), source })
}

fn finish(mut w: csv::Writer<std::fs::File>, path: &Path) -> Result<(), NetworkError> {
    w.flush().map_err(|source| NetworkError::Io { path: path.to_path_buf(), source })
}

/// `podcast_id_a,podcast_id_b,shared_guest_count,guests` with guests
/// joined by `|`.
pub fn write_edges_csv(graph: &GuestGraph, path: &Path) -> Result<(), NetworkError> {
    let csv_err = |source| NetworkError::Csv { path: path.to_path_buf(), source };
    let mut w = writer(path)?;
    w.write_record(["podcast_id_a", "podcast_id_b", "shared_guest_count", "guests"]).map_err(csv_err)?;
    for e in &graph.edges {
        let guests = e.guests.iter().map(String::as_str).collect::<Vec<_>>().join("|");
        w.write_record([&graph.nodes[e.a], &graph.nodes[e.b], &e.guests.len().to_string(), &guests])
            .map_err(csv_err)?;
    }
    finish(w, path)
}

/// `podcast_id,category,degree`.
pub fn write_nodes_csv(graph: &GuestGraph, path: &Path) -> Result<(), NetworkError> {
    let csv_err = |source| NetworkError::Csv { path: path.to_path_buf(), source };
    let mut w = writer(path)?;
    w.write_record(["podcast_id", "category", "degree"]).map_err(csv_err)?;
    for ((id, cat), k) in graph.nodes.iter().zip(&graph.categories).zip(graph.degrees()) {
        w.write_record([id.as_str(), cat.as_str(), &k.to_string()]).map_err(csv_err)?;
    }
    finish(w, path)
}

/// `category,nodes,modularity`: an `all` row for the full category
/// partition (when defined), then one row per binary category partition.
pub fn write_modularity_csv(
    graph: &GuestGraph,
    overall: Option<f64>,
    q: &BTreeMap<Category, f64>,
    path: &Path,
) -> Result<(), NetworkError> {
    let csv_err = |source| NetworkError::Csv { path: path.to_path_buf(), source };
    let mut w = writer(path)?;
    w.write_record(["category", "nodes", "modularity"]).map_err(csv_err)?;
    if let Some(value) = overall {
        w.write_record(["all", &graph.nodes.len().to_string(), &format!("{value:.12}")]).map_err(csv_err)?;
    }
    for (cat, value) in q {
        let nodes = graph.categories.iter().filter(|c| *c == cat).count();
        w.write_record([cat.as_str(), &nodes.to_string(), &format!("{value:.12}")]).map_err(csv_err)?;
    }
    finish(w, path)
}
