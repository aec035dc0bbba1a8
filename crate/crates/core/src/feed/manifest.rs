use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use flate2::read::GzDecoder;

use super::{FeedDocument, FeedError};

/// One row of the feed manifest: `podcast_id,feed_path[,feed_url]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub podcast_id: String,
    /// Resolved against the manifest's directory.
    pub feed_path: PathBuf,
    pub feed_url: Option<String>,
}

/// Reads the manifest CSV. Rows are returned sorted by podcast id.
pub fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>, FeedError> {
    let err = |message: String| FeedError::Manifest { path: path.to_path_buf(), message };
    let base = path.parent().unwrap_or(Path::new("."));
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| err(e.to_string()))?;
    let headers = reader.headers().map_err(|e| err(e.to_string()))?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let id_col = col("podcast_id").ok_or_else(|| err("missing podcast_id column".into()))?;
    let path_col = col("feed_path").ok_or_else(|| err("missing feed_path column".into()))?;
    let url_col = col("feed_url");

    let mut out = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| err(format!("row {}: {e}", i + 2)))?;
        let podcast_id = row.get(id_col).unwrap_or("").to_string();
        let feed_path = row.get(path_col).unwrap_or("");
        if podcast_id.is_empty() || feed_path.is_empty() {
            return Err(err(format!("row {}: empty podcast_id or feed_path", i + 2)));
        }
        out.push(ManifestEntry {
            podcast_id,
            feed_path: base.join(feed_path),
            feed_url: url_col.and_then(|c| row.get(c)).filter(|u| !u.is_empty()).map(str::to_string),
        });
    }
    out.sort_by(|a, b| a.podcast_id.cmp(&b.podcast_id));
    if let Some(w) = out.windows(2).find(|w| w[0].podcast_id == w[1].podcast_id) {
        return Err(err(format!("duplicate podcast_id {:?}", w[0].podcast_id)));
    }
    Ok(out)
}

/// Where feed documents come from. Crawling is out of scope; the file-backed
/// source is what the pipeline uses.
pub trait FeedSource: Sync {
    fn fetch(&self, entry: &ManifestEntry) -> Result<FeedDocument, FeedError>;
}

/// Reads feeds from disk, transparently decompressing gzip.
#[derive(Debug, Default, Clone, Copy)]
pub struct FileFeedSource;

impl FeedSource for FileFeedSource {
    fn fetch(&self, entry: &ManifestEntry) -> Result<FeedDocument, FeedError> {
        let path = &entry.feed_path;
        let io = |source| FeedError::Io { path: path.clone(), source };
        let bytes = fs::read(path).map_err(io)?;
        let raw_xml = if bytes.starts_with(&[0x1f, 0x8b]) {
            let mut s = String::new();
            GzDecoder::new(&bytes[..]).read_to_string(&mut s).map_err(io)?;
            s
        } else {
            String::from_utf8(bytes).map_err(|e| io(std::io::Error::new(std::io::ErrorKind::InvalidData, e)))?
        };
        let fetched_at = fs::metadata(path)
            .and_then(|m| m.modified())
            .map(DateTime::<Utc>::from)
            .unwrap_or(DateTime::<Utc>::UNIX_EPOCH);
        Ok(FeedDocument { raw_xml, fetched_at })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use flate2::{write::GzEncoder, Compression};
    use std::io::Write;

    #[test]
    fn reads_plain_and_gzip() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("a.xml"), "<rss/>").unwrap();
        let mut gz = GzEncoder::new(Vec::new(), Compression::default());
        gz.write_all(b"<rss><channel/></rss>").unwrap();
        fs::write(dir.path().join("b.xml.gz"), gz.finish().unwrap()).unwrap();
        fs::write(
            dir.path().join("manifest.csv"),
            "podcast_id,feed_path,feed_url\nzz,b.xml.gz,\naa,a.xml,https://x.org/f\n",
        )
        .unwrap();
        let entries = read_manifest(&dir.path().join("manifest.csv")).unwrap();
        assert_eq!(entries[0].podcast_id, "aa");
        assert_eq!(entries[0].feed_url.as_deref(), Some("https://x.org/f"));
        assert_eq!(entries[1].feed_url, None);
        assert_eq!(FileFeedSource.fetch(&entries[0]).unwrap().raw_xml, "<rss/>");
        assert_eq!(FileFeedSource.fetch(&entries[1]).unwrap().raw_xml, "<rss><channel/></rss>");
    }

    #[test]
    fn duplicate_ids_rejected() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("m.csv"), "podcast_id,feed_path\na,x\na,y\n").unwrap();
        assert!(read_manifest(&dir.path().join("m.csv")).is_err());
    }
}
