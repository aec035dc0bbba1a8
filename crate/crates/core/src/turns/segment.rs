use crate::model::{Prosody, Turn, TurnRole, WordRecord};
use crate::text::{contains_sequence, normalized_tokens};

/// Groups labeled words into maximal same-speaker runs.
///
/// Unlabeled words belong to no turn and do not break a run.
pub fn segment_turns(episode_id: &str, words: &[WordRecord]) -> Vec<Turn> {
    let mut turns: Vec<Turn> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (i, w) in words.iter().enumerate() {
        let Some(speaker) = &w.speaker else { continue };
        match turns.last_mut() {
            Some(t) if &t.speaker == speaker => {
                t.end_s = t.end_s.max(w.end_s);
                members.last_mut().expect("parallel to turns").push(i);
            }
            _ => {
                let turn_id = turns.len();
                turns.push(Turn {
                    episode_id: episode_id.to_string(),
                    turn_key: format!("{episode_id}#{turn_id}"),
                    turn_id,
                    speaker: speaker.clone(),
                    role: TurnRole::Unknown,
                    speaker_name: None,
                    text: String::new(),
                    start_s: w.start_s,
                    end_s: w.end_s,
                    prosody: None,
                    word_indices: Vec::new(),
                });
                members.push(vec![i]);
            }
        }
    }
    for (turn, idx) in turns.iter_mut().zip(members) {
        turn.text = idx.iter().map(|&i| words[i].token.trim()).collect::<Vec<_>>().join(" ");
        let prosody: Vec<Prosody> = idx.iter().filter_map(|&i| words[i].prosody()).collect();
        turn.prosody = Prosody::mean(&prosody);
        turn.word_indices = idx;
    }
    turns
}

/// The speaker of the earliest turn that says `host_name` (both tokens,
/// adjacent, ignoring case and punctuation).
pub fn map_host_voice(turns: &[Turn], host_name: &str) -> Option<String> {
    let name = normalized_tokens(host_name);
    if name.len() != 2 {
        return None;
    }
    turns.iter().find(|t| contains_sequence(&normalized_tokens(&t.text), &name)).map(|t| t.speaker.clone())
}

/// Marks every turn by `host_speaker` as the host, carrying the host's name.
pub fn apply_host_voice(turns: &mut [Turn], host_speaker: &str, host_name: &str) {
    for t in turns.iter_mut().filter(|t| t.speaker == host_speaker) {
        t.role = TurnRole::Host;
        t.speaker_name = Some(host_name.to_string());
    }
}
