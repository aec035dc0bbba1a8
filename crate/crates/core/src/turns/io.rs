use std::path::Path;

use super::{DiarizationSegment, ProsodicFrame, TurnsError};

fn open(path: &Path) -> Result<csv::Reader<std::fs::File>, TurnsError> {
    csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(source) => TurnsError::Io { path: path.to_path_buf(), source },
        other => TurnsError::Row { path: path.to_path_buf(), row: 0, message: format!("{other:?}") },
    })
}

fn column(headers: &csv::StringRecord, path: &Path, name: &str) -> Result<usize, TurnsError> {
    headers.iter().position(|h| h == name).ok_or_else(|| TurnsError::Row {
        path: path.to_path_buf(),
        row: 1,
        message: format!("missing column {name:?}"),
    })
}

fn number(row: &csv::StringRecord, col: usize, path: &Path, row_no: usize) -> Result<f64, TurnsError> {
    let raw = row.get(col).unwrap_or("");
    raw.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| TurnsError::Row {
        path: path.to_path_buf(),
        row: row_no,
        message: format!("not a finite number: {raw:?}"),
    })
}

/// Reads a frame CSV with columns `window_start_s,f0,f1,mfcc1..mfcc4`.
/// Frames must be time-ordered and non-overlapping.
pub fn read_frames_csv(path: &Path) -> Result<Vec<ProsodicFrame>, TurnsError> {
    let mut rdr = open(path)?;
    let headers =
        rdr.headers().map_err(|e| TurnsError::Row { path: path.into(), row: 1, message: e.to_string() })?.clone();
    let names = ["window_start_s", "f0", "f1", "mfcc1", "mfcc2", "mfcc3", "mfcc4"];
    let cols: Vec<usize> = names.iter().map(|n| column(&headers, path, n)).collect::<Result<_, _>>()?;
    let mut frames: Vec<ProsodicFrame> = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row_no = i + 2;
        let row = row.map_err(|e| TurnsError::Row { path: path.into(), row: row_no, message: e.to_string() })?;
        let v: Vec<f64> = cols.iter().map(|&c| number(&row, c, path, row_no)).collect::<Result<_, _>>()?;
        let frame = ProsodicFrame::new(v[0], v[1], v[2], [v[3], v[4], v[5], v[6]]);
        if let Some(prev) = frames.last() {
            if frame.window_start_s < prev.window_end_s - 1e-6 {
                return Err(TurnsError::Row {
                    path: path.into(),
                    row: row_no,
                    message: "frames overlap or are out of order".into(),
                });
            }
        }
        frames.push(frame);
    }
    Ok(frames)
}

/// Reads a diarization CSV with columns `speaker,start_s,end_s`.
pub fn read_segments_csv(path: &Path) -> Result<Vec<DiarizationSegment>, TurnsError> {
    let mut rdr = open(path)?;
    let headers =
        rdr.headers().map_err(|e| TurnsError::Row { path: path.into(), row: 1, message: e.to_string() })?.clone();
    let (sc, bc, ec) =
        (column(&headers, path, "speaker")?, column(&headers, path, "start_s")?, column(&headers, path, "end_s")?);
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row_no = i + 2;
        let row = row.map_err(|e| TurnsError::Row { path: path.into(), row: row_no, message: e.to_string() })?;
        let speaker = row.get(sc).unwrap_or("").to_string();
        let (start, end) = (number(&row, bc, path, row_no)?, number(&row, ec, path, row_no)?);
        if speaker.is_empty() || end <= start {
            return Err(TurnsError::Row {
                path: path.into(),
                row: row_no,
                message: "segment needs a speaker and end_s > start_s".into(),
            });
        }
        out.push(DiarizationSegment::new(speaker, start, end));
    }
    Ok(out)
}
