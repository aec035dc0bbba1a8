use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::SCHEMA_VERSION;

#[derive(Debug, thiserror::Error)]
pub enum JsonlError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: line {line}: {message}")]
    Malformed { path: PathBuf, line: usize, message: String },
    #[error("{path}: line {line}: schema version {found:?} does not match expected {expected}")]
    SchemaVersion { path: PathBuf, line: usize, found: Option<u32>, expected: u32 },
    #[error("serializing record {index}: {source}")]
    Serialize {
        index: usize,
        #[source]
        source: serde_json::Error,
    },
}

#[derive(Deserialize)]
struct VersionProbe {
    schema_version: Option<u32>,
}

/// Writes one record per line, each line headed by `"schema_version"`.
pub fn write_jsonl<T: Serialize>(path: &Path, records: &[T]) -> Result<(), JsonlError> {
    let io = |source| JsonlError::Io { path: path.to_path_buf(), source };
    let mut out = BufWriter::new(File::create(path).map_err(io)?);
    for (index, rec) in records.iter().enumerate() {
        let body = serde_json::to_string(rec).map_err(|source| JsonlError::Serialize { index, source })?;
        let line = match body.strip_prefix('{') {
            Some("}") => format!("{{\"schema_version\":{SCHEMA_VERSION}}}"),
            Some(rest) => format!("{{\"schema_version\":{SCHEMA_VERSION},{rest}"),
            None => {
                return Err(JsonlError::Serialize {
                    index,
                    source: serde::ser::Error::custom("record is not a JSON object"),
                })
            }
        };
        out.write_all(line.as_bytes()).map_err(io)?;
        out.write_all(b"\n").map_err(io)?;
    }
    out.flush().map_err(io)
}

/// Result of decoding one line in lenient mode.
#[derive(Debug)]
pub enum LineOutcome<T> {
    Ok(T),
    Err(JsonlError),
}

fn decode_line<T: DeserializeOwned>(path: &Path, line_no: usize, line: &str) -> Result<T, JsonlError> {
    let probe: VersionProbe = serde_json::from_str(line).map_err(|e| JsonlError::Malformed {
        path: path.to_path_buf(),
        line: line_no,
        message: e.to_string(),
    })?;
    if probe.schema_version != Some(SCHEMA_VERSION) {
        return Err(JsonlError::SchemaVersion {
            path: path.to_path_buf(),
            line: line_no,
            found: probe.schema_version,
            expected: SCHEMA_VERSION,
        });
    }
    serde_json::from_str(line).map_err(|e| JsonlError::Malformed {
        path: path.to_path_buf(),
        line: line_no,
        message: e.to_string(),
    })
}

fn lines(path: &Path) -> Result<impl Iterator<Item = (usize, std::io::Result<String>)>, JsonlError> {
    let file = File::open(path).map_err(|source| JsonlError::Io { path: path.to_path_buf(), source })?;
    Ok(BufReader::new(file).lines().enumerate().map(|(i, l)| (i + 1, l)))
}

/// Reads a JSONL file, failing on the first bad line. Line numbers are 1-based.
/// Blank lines are skipped.
pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, JsonlError> {
    let mut out = Vec::new();
    for (line_no, line) in lines(path)? {
        let line = line.map_err(|source| JsonlError::Io { path: path.to_path_buf(), source })?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(decode_line(path, line_no, &line)?);
    }
    Ok(out)
}

/// Reads a JSONL file, returning a per-line outcome so that callers can
/// isolate bad lines instead of aborting.
pub fn read_jsonl_lenient<T: DeserializeOwned>(path: &Path) -> Result<Vec<LineOutcome<T>>, JsonlError> {
    let mut out = Vec::new();
    for (line_no, line) in lines(path)? {
        let line = line.map_err(|source| JsonlError::Io { path: path.to_path_buf(), source })?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(match decode_line(path, line_no, &line) {
            Ok(v) => LineOutcome::Ok(v),
            Err(e) => LineOutcome::Err(e),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EpisodeRecord, WordRecord};

    fn records() -> Vec<EpisodeRecord> {
        let base = crate::model::sample_record();
        (0..3)
            .map(|i| {
                let mut r = base.clone();
                r.episode.episode_id = format!("p1.e{i}");
                r.roles.iter_mut().for_each(|a| a.source_episode = r.episode.episode_id.clone());
                r.topics.as_mut().unwrap().episode_id = r.episode.episode_id.clone();
                r.words.push(WordRecord::new("again", 1.25, 1.5));
                r
            })
            .collect()
    }

    #[test]
    fn empty_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.jsonl");
        write_jsonl::<EpisodeRecord>(&p, &[]).unwrap();
        assert_eq!(std::fs::read(&p).unwrap().len(), 0);
        assert!(read_jsonl::<EpisodeRecord>(&p).unwrap().is_empty());
    }

    #[test]
    fn three_records_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.jsonl");
        let recs = records();
        write_jsonl(&p, &recs).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().all(|l| l.starts_with("{\"schema_version\":1,")));
        assert_eq!(read_jsonl::<EpisodeRecord>(&p).unwrap(), recs);
    }

    #[test]
    fn truncated_line_reports_its_index() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.jsonl");
        write_jsonl(&p, &records()).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        let mut lines: Vec<&str> = text.lines().collect();
        let cut = &lines[1][..lines[1].len() / 2];
        lines[1] = cut;
        std::fs::write(&p, lines.join("\n")).unwrap();
        match read_jsonl::<EpisodeRecord>(&p) {
            Err(JsonlError::Malformed { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected malformed error, got {other:?}"),
        }
    }

    #[test]
    fn version_mismatch_is_explicit() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.jsonl");
        write_jsonl(&p, &records()).unwrap();
        let text = std::fs::read_to_string(&p).unwrap().replacen("\"schema_version\":1", "\"schema_version\":9", 1);
        std::fs::write(&p, text).unwrap();
        assert!(matches!(
            read_jsonl::<EpisodeRecord>(&p),
            Err(JsonlError::SchemaVersion { line: 1, found: Some(9), .. })
        ));
    }

    #[test]
    fn times_are_written_at_millisecond_precision() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("w.jsonl");
        write_jsonl(&p, &[WordRecord::new("x", 1.23456, 2.0)]).unwrap();
        let back: Vec<WordRecord> = read_jsonl(&p).unwrap();
        assert_eq!(back[0].start_s, 1.235);
    }
}
