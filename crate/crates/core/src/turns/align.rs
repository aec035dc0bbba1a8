use serde::{Deserialize, Serialize};

use super::{micros, overlap};
use crate::model::{Prosody, WordRecord};

/// Width of one prosodic analysis window.
pub const FRAME_SECONDS: f64 = 0.1;

/// One fixed-width window of prosodic measurements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProsodicFrame {
    pub window_start_s: f64,
    pub window_end_s: f64,
    /// Semitones above A0.
    pub f0: f64,
    /// Hz.
    pub f1: f64,
    pub mfcc: [f64; 4],
}

impl ProsodicFrame {
    pub fn new(window_start_s: f64, f0: f64, f1: f64, mfcc: [f64; 4]) -> Self {
        ProsodicFrame { window_start_s, window_end_s: window_start_s + FRAME_SECONDS, f0, f1, mfcc }
    }

    pub fn prosody(&self) -> Prosody {
        Prosody { f0: self.f0, f1: self.f1, mfcc: self.mfcc }
    }

    fn span(&self) -> (i64, i64) {
        (micros(self.window_start_s), micros(self.window_end_s))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentStats {
    pub assigned_frames: usize,
    pub unassigned_frames: usize,
    pub words_with_prosody: usize,
}

/// For every frame, the index of the word it overlaps most, or `None` when it
/// overlaps no word. Ties go to the earlier word.
///
/// Words must be ordered by start time.
pub fn assign_frames(words: &[WordRecord], frames: &[ProsodicFrame]) -> Vec<Option<usize>> {
    let spans: Vec<(i64, i64)> = words.iter().map(|w| (micros(w.start_s), micros(w.end_s))).collect();
    let longest = spans.iter().map(|(s, e)| e - s).max().unwrap_or(0);
    frames
        .iter()
        .map(|f| {
            let fs = f.span();
            let hi = spans.partition_point(|(s, _)| *s < fs.1);
            let mut best: Option<(usize, i64)> = None;
            // Words starting more than `longest` before the frame cannot reach it.
            for j in (0..hi).rev() {
                if spans[j].0 + longest <= fs.0 {
                    break;
                }
                let ov = overlap(spans[j], fs);
                if ov > 0 && best.is_none_or(|(_, b)| ov >= b) {
                    best = Some((j, ov));
                }
            }
            best.map(|(j, _)| j)
        })
        .collect()
}

/// Sets each word's prosody to the mean of the frames assigned to it; words
/// without frames get absent prosody.
pub fn align_prosody(words: &mut [WordRecord], frames: &[ProsodicFrame]) -> AlignmentStats {
    let assignment = assign_frames(words, frames);
    let mut buckets: Vec<Vec<Prosody>> = vec![Vec::new(); words.len()];
    let mut stats = AlignmentStats::default();
    for (frame, target) in frames.iter().zip(&assignment) {
        match target {
            Some(w) => {
                buckets[*w].push(frame.prosody());
                stats.assigned_frames += 1;
            }
            None => stats.unassigned_frames += 1,
        }
    }
    for (word, bucket) in words.iter_mut().zip(&buckets) {
        let p = Prosody::mean(bucket);
        stats.words_with_prosody += usize::from(p.is_some());
        word.set_prosody(p);
    }
    stats
}
