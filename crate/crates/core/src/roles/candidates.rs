use serde::{Deserialize, Serialize};

use crate::model::EpisodeRecord;

/// Only this many leading transcript words are searched for names.
pub const TRANSCRIPT_WINDOW: usize = 350;
/// Words of context kept on each side of a mention.
pub const CONTEXT_TOKENS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MentionSource {
    Transcript,
    EpisodeDescription,
    PodcastDescription,
}

/// One occurrence of a two-token person name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateMention {
    pub name: String,
    pub source: MentionSource,
    /// Character (not byte) offset of the name in its source text.
    pub char_offset: usize,
    /// Word index of the name's first token in its source text.
    pub token_index: usize,
    /// Up to [`CONTEXT_TOKENS`] words either side, with the name in between.
    pub context: String,
    /// Word index of the name's first token within `context`.
    pub context_name_index: usize,
}

/// Word lists steering the capitalization heuristic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExtractorConfig {
    /// Capitalized words that are never part of a name (sentence openers etc.).
    pub stopwords: Vec<String>,
    /// Titles dropped in front of a name ("Dr. Jane Doe" → "Jane Doe").
    pub honorifics: Vec<String>,
    /// Tokens marking a place, brand or organisation rather than a person.
    pub non_person_tokens: Vec<String>,
    /// Two-token phrases that look like names but are not people.
    pub non_person_names: Vec<String>,
}

const STOPWORDS: &[&str] = &[
    "a",
    "about",
    "after",
    "all",
    "also",
    "an",
    "and",
    "another",
    "any",
    "are",
    "as",
    "at",
    "back",
    "be",
    "because",
    "before",
    "but",
    "by",
    "can",
    "come",
    "could",
    "did",
    "do",
    "does",
    "don't",
    "each",
    "even",
    "every",
    "for",
    "from",
    "get",
    "go",
    "good",
    "great",
    "had",
    "has",
    "have",
    "he",
    "he's",
    "hello",
    "her",
    "here",
    "hey",
    "hi",
    "his",
    "how",
    "i",
    "i'd",
    "i'll",
    "i'm",
    "i've",
    "if",
    "in",
    "is",
    "it",
    "it's",
    "its",
    "just",
    "let",
    "let's",
    "like",
    "look",
    "many",
    "maybe",
    "me",
    "more",
    "most",
    "my",
    "no",
    "not",
    "now",
    "of",
    "oh",
    "ok",
    "okay",
    "on",
    "one",
    "or",
    "our",
    "please",
    "really",
    "right",
    "she",
    "she's",
    "so",
    "some",
    "sure",
    "thank",
    "thanks",
    "that",
    "that's",
    "the",
    "their",
    "then",
    "there",
    "there's",
    "these",
    "they",
    "they're",
    "this",
    "those",
    "to",
    "today",
    "tomorrow",
    "tonight",
    "uh",
    "um",
    "very",
    "was",
    "we",
    "we'll",
    "we're",
    "we've",
    "welcome",
    "well",
    "what",
    "what's",
    "when",
    "where",
    "which",
    "while",
    "who",
    "why",
    "will",
    "with",
    "yeah",
    "yes",
    "yesterday",
    "you",
    "you're",
    "your",
    "episode",
    "part",
    "chapter",
    "season",
    "podcast",
    "show",
    "monday",
    "tuesday",
    "wednesday",
    "thursday",
    "friday",
    "saturday",
    "sunday",
    "god",
    "lord",
    "jesus",
    "christ",
];

const HONORIFICS: &[&str] = &[
    "mr",
    "mrs",
    "ms",
    "miss",
    "mx",
    "dr",
    "doctor",
    "prof",
    "professor",
    "sir",
    "dame",
    "rev",
    "reverend",
    "pastor",
    "father",
    "sen",
    "senator",
    "rep",
    "representative",
    "gov",
    "governor",
    "president",
    "mayor",
    "judge",
    "coach",
    "captain",
    "capt",
    "officer",
    "detective",
    "sgt",
    "sergeant",
    "gen",
    "general",
    "chef",
    "rabbi",
    "imam",
];

const NON_PERSON_TOKENS: &[&str] = &[
    "america",
    "american",
    "apple",
    "association",
    "avenue",
    "bank",
    "center",
    "church",
    "city",
    "club",
    "college",
    "company",
    "corp",
    "council",
    "county",
    "department",
    "foundation",
    "google",
    "group",
    "hall",
    "house",
    "inc",
    "institute",
    "island",
    "league",
    "llc",
    "media",
    "ministries",
    "ministry",
    "museum",
    "network",
    "news",
    "park",
    "party",
    "press",
    "radio",
    "records",
    "road",
    "school",
    "society",
    "spotify",
    "state",
    "states",
    "street",
    "studios",
    "team",
    "times",
    "tv",
    "united",
    "university",
    "york",
    "youtube",
    "zoom",
];

const NON_PERSON_NAMES: &[&str] = &[
    "new york",
    "new jersey",
    "new mexico",
    "new orleans",
    "new zealand",
    "los angeles",
    "las vegas",
    "san francisco",
    "san diego",
    "san antonio",
    "santa monica",
    "hong kong",
    "north carolina",
    "south carolina",
    "north dakota",
    "south dakota",
    "west virginia",
    "rhode island",
    "great britain",
    "saudi arabia",
    "costa rica",
    "puerto rico",
    "black lives",
    "wall street",
    "silicon valley",
    "white house",
    "super bowl",
    "social media",
    "covid nineteen",
    "prime minister",
    "supreme court",
    "real estate",
    "happy hour",
];

fn owned(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

impl Default for ExtractorConfig {
    fn default() -> Self {
        ExtractorConfig {
            stopwords: owned(STOPWORDS),
            honorifics: owned(HONORIFICS),
            non_person_tokens: owned(NON_PERSON_TOKENS),
            non_person_names: owned(NON_PERSON_NAMES),
        }
    }
}

/// A span found by an external NER system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntitySpan {
    pub source: MentionSource,
    /// Character offset into the source text.
    pub char_offset: usize,
    pub text: String,
}

struct Word<'a> {
    raw: &'a str,
    char_offset: usize,
}

fn split_words(text: &str) -> Vec<Word<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (ci, (bi, c)) in text.char_indices().enumerate() {
        if c.is_whitespace() {
            if let Some((b0, c0)) = start.take() {
                out.push(Word { raw: &text[b0..bi], char_offset: c0 });
            }
        } else if start.is_none() {
            start = Some((bi, ci));
        }
    }
    if let Some((b0, c0)) = start {
        out.push(Word { raw: &text[b0..], char_offset: c0 });
    }
    out
}

/// Core of a token plus whether punctuation after it ends a phrase.
fn core(raw: &str) -> (&str, bool) {
    let lead = raw.trim_start_matches(|c: char| !c.is_alphanumeric());
    let mut s = lead.trim_end_matches(|c: char| !c.is_alphanumeric());
    let trailing = &lead[s.len()..];
    let mut breaks = !trailing.is_empty();
    for suffix in ["'s", "’s"] {
        if let Some(stem) = s.strip_suffix(suffix) {
            s = stem;
            breaks = true;
        }
    }
    (s, breaks)
}

fn looks_like_name_part(token: &str) -> bool {
    let mut chars = token.chars();
    let Some(first) = chars.next() else { return false };
    first.is_uppercase()
        && token.chars().count() >= 2
        && token.chars().all(|c| c.is_alphabetic() || c == '-' || c == '\'' || c == '’')
        && token.chars().any(|c| c.is_lowercase())
}

fn in_list(list: &[String], word: &str) -> bool {
    list.iter().any(|w| w.eq_ignore_ascii_case(word))
}

fn context_of(words: &[Word], first: usize, len: usize) -> (String, usize) {
    let lo = first.saturating_sub(CONTEXT_TOKENS);
    let hi = (first + len + CONTEXT_TOKENS).min(words.len());
    let text = words[lo..hi].iter().map(|w| w.raw).collect::<Vec<_>>().join(" ");
    (text, first - lo)
}

impl ExtractorConfig {
    fn is_person_pair(&self, first: &str, last: &str) -> bool {
        let pair = format!("{first} {last}").to_lowercase();
        !in_list(&self.non_person_tokens, first)
            && !in_list(&self.non_person_tokens, last)
            && !self.non_person_names.iter().any(|n| n.eq_ignore_ascii_case(&pair))
    }

    fn scan(&self, text: &str, source: MentionSource, limit: Option<usize>, out: &mut Vec<CandidateMention>) {
        let words = split_words(text);
        let searchable = limit.unwrap_or(words.len()).min(words.len());
        let mut run: Vec<(usize, &str)> = Vec::new();
        let flush = |run: &mut Vec<(usize, &str)>, out: &mut Vec<CandidateMention>| {
            if run.len() == 2 && self.is_person_pair(run[0].1, run[1].1) {
                let first = run[0].0;
                let (context, context_name_index) = context_of(&words, first, 2);
                out.push(CandidateMention {
                    name: format!("{} {}", run[0].1, run[1].1),
                    source,
                    char_offset: words[first].char_offset,
                    token_index: first,
                    context,
                    context_name_index,
                });
            }
            run.clear();
        };
        for (i, w) in words.iter().enumerate().take(searchable) {
            let (token, breaks) = core(w.raw);
            let leading_break = w.raw.starts_with(|c: char| !c.is_alphanumeric());
            if leading_break {
                flush(&mut run, out);
            }
            let part =
                looks_like_name_part(token) && !in_list(&self.stopwords, token) && !in_list(&self.honorifics, token);
            if part {
                run.push((i, token));
            } else {
                flush(&mut run, out);
            }
            if breaks {
                flush(&mut run, out);
            }
        }
        flush(&mut run, out);
    }
}

fn source_texts(episode: &EpisodeRecord) -> [(MentionSource, String, Option<usize>); 3] {
    [
        (MentionSource::Transcript, episode.transcript_text(), Some(TRANSCRIPT_WINDOW)),
        (MentionSource::EpisodeDescription, episode.episode.description.clone(), None),
        (MentionSource::PodcastDescription, episode.podcast.description.clone(), None),
    ]
}

/// Finds two-token capitalized person names in the first
/// [`TRANSCRIPT_WINDOW`] transcript words and in both descriptions.
/// Every occurrence is returned, transcript first.
pub fn extract_candidates(episode: &EpisodeRecord, config: &ExtractorConfig) -> Vec<CandidateMention> {
    let mut out = Vec::new();
    for (source, text, limit) in source_texts(episode) {
        config.scan(&text, source, limit, &mut out);
    }
    out
}

/// Builds mentions from externally detected entity spans, keeping only
/// two-token names and, for the transcript, those inside the leading window.
pub fn candidates_from_spans(episode: &EpisodeRecord, spans: &[EntitySpan]) -> Vec<CandidateMention> {
    let texts = source_texts(episode);
    let mut spans: Vec<&EntitySpan> = spans.iter().collect();
    spans.sort_by_key(|s| (s.source, s.char_offset));
    let mut out = Vec::new();
    for span in spans {
        let tokens: Vec<&str> = span.text.split_whitespace().map(|t| core(t).0).collect();
        if tokens.len() != 2 || tokens.iter().any(|t| t.is_empty()) {
            continue;
        }
        let (_, text, limit) = texts.iter().find(|(s, _, _)| *s == span.source).expect("every source has a text");
        let words = split_words(text);
        let Some(first) = words.iter().position(|w| w.char_offset >= span.char_offset) else { continue };
        if first + 1 >= limit.unwrap_or(usize::MAX) || first + 1 >= words.len() {
            continue;
        }
        let (context, context_name_index) = context_of(&words, first, 2);
        out.push(CandidateMention {
            name: tokens.join(" "),
            source: span.source,
            char_offset: words[first].char_offset,
            token_index: first,
            context,
            context_name_index,
        });
    }
    out
}
