//! Token normalization shared by the quality filter, role inference and topic stages.

/// Lowercases a raw token and strips leading/trailing punctuation.
///
/// Returns `None` when nothing alphanumeric is left.
pub fn normalize_token(raw: &str) -> Option<String> {
    let trimmed = raw.trim_matches(|c: char| !c.is_alphanumeric());
    if trimmed.is_empty() {
        None
    } else {
        Some(trimmed.to_lowercase())
    }
}

/// Whitespace-splits `text` and normalizes every piece, dropping empties.
pub fn normalized_tokens(text: &str) -> Vec<String> {
    text.split_whitespace().filter_map(normalize_token).collect()
}

/// Normalizes a sequence of already-split tokens. A single raw token may
/// contain internal whitespace (ASR output sometimes does), so it is split again.
pub fn normalize_all<'a, I>(tokens: I) -> Vec<String>
where
    I: IntoIterator<Item = &'a str>,
{
    tokens.into_iter().flat_map(str::split_whitespace).filter_map(normalize_token).collect()
}

/// True when `needle` occurs in `haystack` as a contiguous run.
pub fn contains_sequence<T: PartialEq>(haystack: &[T], needle: &[T]) -> bool {
    if needle.is_empty() {
        return true;
    }
    haystack.windows(needle.len()).any(|w| w == needle)
}

/// Removes markup tags and decodes the handful of entities that survive
/// XML unescaping in feed descriptions.
pub fn strip_html(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut in_tag = false;
    for c in text.chars() {
        match c {
            '<' => in_tag = true,
            '>' if in_tag => {
                in_tag = false;
                out.push(' ');
            }
            _ if !in_tag => out.push(c),
            _ => {}
        }
    }
    out.replace("&nbsp;", " ")
        .replace("&amp;", "&")
        .replace("&quot;", "\"")
        .replace("&#39;", "'")
        .replace("&apos;", "'")
}
