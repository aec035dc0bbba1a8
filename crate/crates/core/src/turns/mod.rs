//! Word-level merging of prosody and diarization, and speaker-turn assembly.
//!
//! All overlap arithmetic is done on integer microseconds so that ties such
//! as a frame straddling two words by exactly 50 ms each are decided by the
//! tie-break rule rather than by floating-point noise.

mod align;
mod io;
mod segment;
mod speakers;

pub use align::{align_prosody, assign_frames, AlignmentStats, ProsodicFrame, FRAME_SECONDS};
pub use io::{read_frames_csv, read_segments_csv};
pub use segment::{apply_host_voice, map_host_voice, segment_turns};
pub use speakers::{
    assign_speakers, filter_minor_speakers, DiarizationSegment, SpeakerShares, DEFAULT_MIN_SPEAKER_SHARE,
};

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum TurnsError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: row {row}: {message}")]
    Row { path: PathBuf, row: usize, message: String },
}

pub(crate) fn micros(seconds: f64) -> i64 {
    (seconds * 1e6).round() as i64
}

/// Positive overlap of two half-open intervals in microseconds, else 0.
pub(crate) fn overlap(a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.1.min(b.1) - a.0.max(b.0)).max(0)
}
