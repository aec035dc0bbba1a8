use chrono::{DateTime, NaiveDate, Utc};
use roxmltree::{Document, Node, ParsingOptions};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{parse_duration, FeedError};
use crate::model::{Category, EpisodeMeta, PodcastMeta};
use crate::text::strip_html;

/// A raw feed as retrieved.
#[derive(Debug, Clone)]
pub struct FeedDocument {
    pub raw_xml: String,
    pub fetched_at: DateTime<Utc>,
}

impl FeedDocument {
    pub fn new(raw_xml: impl Into<String>) -> Self {
        FeedDocument { raw_xml: raw_xml.into(), fetched_at: DateTime::<Utc>::UNIX_EPOCH }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IngestFlag {
    MissingDate,
    MalformedDate,
    UnparsedDuration,
    MissingLanguage,
}

impl IngestFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            IngestFlag::MissingDate => "missing-date",
            IngestFlag::MalformedDate => "malformed-date",
            IngestFlag::UnparsedDuration => "unparsed-duration",
            IngestFlag::MissingLanguage => "missing-language",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IngestedEpisode {
    pub meta: EpisodeMeta,
    pub flags: Vec<IngestFlag>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedFeed {
    pub podcast: PodcastMeta,
    pub episodes: Vec<IngestedEpisode>,
}

const ITUNES_NS: &str = "http://www.itunes.com/dtds/podcast-1.0.dtd";

const PLATFORMS: &[(&str, &str)] = &[
    ("anchor.fm", "anchor"),
    ("soundcloud", "soundcloud"),
    ("libsyn", "libsyn"),
    ("buzzsprout", "buzzsprout"),
    ("podbean", "podbean"),
    ("spreaker", "spreaker"),
    ("megaphone", "megaphone"),
    ("simplecast", "simplecast"),
    ("blubrry", "blubrry"),
    ("transistor.fm", "transistor"),
    ("omnycontent", "omny"),
    ("art19", "art19"),
    ("acast", "acast"),
    ("captivate", "captivate"),
    ("redcircle", "redcircle"),
    ("podomatic", "podomatic"),
    ("squarespace", "squarespace"),
    ("feedburner", "feedburner"),
];

fn url_host(url: &str) -> Option<&str> {
    let rest = url.split_once("://").map(|(_, r)| r)?;
    let authority = rest.split(['/', '?', '#']).next()?;
    let host = authority.rsplit('@').next()?.split(':').next()?;
    (!host.is_empty()).then_some(host)
}

/// Names the hosting platform behind a feed or enclosure URL.
pub fn hosting_platform(url: &str) -> String {
    let Some(host) = url_host(url) else {
        return "unknown".to_string();
    };
    let host = host.to_ascii_lowercase();
    PLATFORMS
        .iter()
        .find(|(needle, _)| host.contains(needle))
        .map(|(_, name)| name.to_string())
        .unwrap_or_else(|| host.trim_start_matches("www.").to_string())
}

/// A filesystem-safe, stable slug for an item key: kept verbatim when it is
/// already short and safe, hashed otherwise.
pub fn episode_slug(key: &str) -> String {
    let safe =
        !key.is_empty() && key.len() <= 64 && key.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_');
    if safe {
        key.to_string()
    } else {
        let digest = Sha256::digest(key.as_bytes());
        hex::encode(&digest[..8])
    }
}

fn byte_offset(text: &str, pos: roxmltree::TextPos) -> usize {
    let mut offset = 0;
    for (i, line) in text.split_inclusive('\n').enumerate() {
        if i + 1 == pos.row as usize {
            let col = (pos.col as usize).saturating_sub(1);
            return offset + line.char_indices().nth(col).map(|(b, _)| b).unwrap_or(line.len());
        }
        offset += line.len();
    }
    text.len()
}

fn child<'a, 'i>(node: Node<'a, 'i>, name: &str) -> Option<Node<'a, 'i>> {
    node.children()
        .find(|c| c.is_element() && c.tag_name().name() == name && c.tag_name().namespace() != Some(ITUNES_NS))
}

fn itunes_child<'a, 'i>(node: Node<'a, 'i>, name: &str) -> Option<Node<'a, 'i>> {
    node.children()
        .find(|c| c.is_element() && c.tag_name().name() == name && c.tag_name().namespace() == Some(ITUNES_NS))
}

fn text_of(node: Option<Node>) -> Option<String> {
    let n = node?;
    let t: String = n.descendants().filter(|d| d.is_text()).filter_map(|d| d.text()).collect();
    let t = t.trim();
    (!t.is_empty()).then(|| t.to_string())
}

fn parse_pub_date(raw: &str) -> Option<NaiveDate> {
    let raw = raw.trim();
    if let Ok(dt) = DateTime::parse_from_rfc2822(raw) {
        return Some(dt.with_timezone(&Utc).date_naive());
    }
    if let Ok(dt) = DateTime::parse_from_rfc3339(raw) {
        return Some(dt.with_timezone(&Utc).date_naive());
    }
    NaiveDate::parse_from_str(raw, "%Y-%m-%d").ok()
}

fn channel_category(channel: Node) -> Category {
    if let Some(label) = channel
        .children()
        .filter(|c| c.is_element() && c.tag_name().name() == "category")
        .find_map(|c| c.attribute("text"))
    {
        return Category::from_label(label);
    }
    text_of(child(channel, "category")).map(|t| Category::from_label(&t)).unwrap_or(Category::Unknown)
}

/// Parses an RSS 2.0 document into podcast metadata and one record per `<item>`.
///
/// `feed_url` is the fallback location when the feed does not self-link.
pub fn parse_feed(doc: &FeedDocument, podcast_id: &str, feed_url: Option<&str>) -> Result<ParsedFeed, FeedError> {
    if doc.raw_xml.trim().is_empty() {
        return Err(FeedError::Empty);
    }
    let opts = ParsingOptions { allow_dtd: true, ..ParsingOptions::default() };
    let xml = Document::parse_with_options(&doc.raw_xml, opts)
        .map_err(|e| FeedError::Xml { offset: byte_offset(&doc.raw_xml, e.pos()), message: e.to_string() })?;
    let root = xml.root_element();
    let channel = if root.tag_name().name() == "channel" {
        root
    } else {
        child(root, "channel").ok_or_else(|| FeedError::MissingChannel { root: root.tag_name().name().to_string() })?
    };

    let self_link = channel
        .children()
        .filter(|c| c.is_element() && c.tag_name().name() == "link")
        .find(|c| c.attribute("rel") == Some("self"))
        .and_then(|c| c.attribute("href"))
        .map(str::to_string);
    let feed_url = self_link
        .or_else(|| text_of(itunes_child(channel, "new-feed-url")))
        .or_else(|| feed_url.map(str::to_string))
        .unwrap_or_default();

    let items: Vec<Node> = channel.children().filter(|c| c.is_element() && c.tag_name().name() == "item").collect();
    let first_enclosure =
        items.iter().find_map(|i| child(*i, "enclosure").and_then(|e| e.attribute("url"))).unwrap_or("");
    let hosting =
        if url_host(&feed_url).is_some() { hosting_platform(&feed_url) } else { hosting_platform(first_enclosure) };

    let language = text_of(child(channel, "language")).unwrap_or_default();
    let podcast = PodcastMeta {
        podcast_id: podcast_id.to_string(),
        title: text_of(child(channel, "title")).unwrap_or_default(),
        category: channel_category(channel),
        hosting_platform: hosting,
        feed_url,
        description: text_of(child(channel, "description"))
            .or_else(|| text_of(itunes_child(channel, "summary")))
            .map(|d| strip_html(&d).split_whitespace().collect::<Vec<_>>().join(" "))
            .unwrap_or_default(),
    };

    let mut episodes = Vec::with_capacity(items.len());
    for (index, item) in items.iter().enumerate() {
        let mut flags = Vec::new();
        let title = text_of(child(*item, "title")).unwrap_or_default();
        let raw_date = text_of(child(*item, "pubDate"));
        let publication_date = match raw_date.as_deref() {
            None => {
                flags.push(IngestFlag::MissingDate);
                None
            }
            Some(raw) => {
                let d = parse_pub_date(raw);
                if d.is_none() {
                    flags.push(IngestFlag::MalformedDate);
                }
                d
            }
        };
        let duration_s = match text_of(itunes_child(*item, "duration")) {
            None => None,
            Some(raw) => {
                let d = parse_duration(&raw);
                if d.is_none() {
                    flags.push(IngestFlag::UnparsedDuration);
                }
                d
            }
        };
        let item_language = text_of(child(*item, "language")).unwrap_or_else(|| language.clone());
        if item_language.is_empty() {
            flags.push(IngestFlag::MissingLanguage);
        }
        let key = text_of(child(*item, "guid"))
            .or_else(|| child(*item, "enclosure").and_then(|e| e.attribute("url")).map(str::to_string))
            .unwrap_or_else(|| format!("{index}:{title}:{}", raw_date.clone().unwrap_or_default()));
        let description = text_of(child(*item, "description"))
            .or_else(|| text_of(child(*item, "encoded")))
            .or_else(|| text_of(itunes_child(*item, "summary")))
            .map(|d| strip_html(&d).split_whitespace().collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        episodes.push(IngestedEpisode {
            meta: EpisodeMeta {
                episode_id: format!("{podcast_id}.{}", episode_slug(&key)),
                podcast_id: podcast_id.to_string(),
                title,
                description,
                publication_date,
                duration_s,
                language: item_language,
            },
            flags,
        });
    }

    Ok(ParsedFeed { podcast, episodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn feed(items: &str) -> FeedDocument {
        FeedDocument::new(format!(
            r#"<?xml version="1.0" encoding="UTF-8"?>
<rss version="2.0" xmlns:itunes="http://www.itunes.com/dtds/podcast-1.0.dtd" xmlns:atom="http://www.w3.org/2005/Atom">
<channel>
  <title>Field Notes</title>
  <description><![CDATA[<p>A show hosted by Jane Doe.</p>]]></description>
  <language>en-US</language>
  <atom:link href="https://anchor.fm/s/abc/podcast/rss" rel="self" type="application/rss+xml"/>
  <itunes:category text="Society &amp; Culture"><itunes:category text="Documentary"/></itunes:category>
  {items}
</channel>
</rss>"#
        ))
    }

    const ITEM: &str = r#"<item>
    <title>Episode one</title>
    <description>We talk to John Smith.</description>
    <pubDate>Fri, 15 May 2020 23:30:00 -0400</pubDate>
    <guid isPermaLink="false">ep-001</guid>
    <enclosure url="https://anchor.fm/s/abc/ep1.mp3" type="audio/mpeg" length="1"/>
    <itunes:duration>30:00</itunes:duration>
  </item>"#;

    #[test]
    fn single_item() {
        let parsed = parse_feed(&feed(ITEM), "p1", None).unwrap();
        assert_eq!(parsed.podcast.title, "Field Notes");
        assert_eq!(parsed.podcast.category, Category::Society);
        assert_eq!(parsed.podcast.hosting_platform, "anchor");
        assert_eq!(parsed.podcast.description, "A show hosted by Jane Doe.");
        assert_eq!(parsed.episodes.len(), 1);
        let ep = &parsed.episodes[0];
        assert_eq!(ep.meta.episode_id, "p1.ep-001");
        // 23:30 at -04:00 is the next day in UTC.
        assert_eq!(ep.meta.publication_date, NaiveDate::from_ymd_opt(2020, 5, 16));
        assert_eq!(ep.meta.duration_s, Some(1800));
        assert_eq!(ep.meta.language, "en-US");
        assert!(ep.flags.is_empty());
    }

    #[test]
    fn zero_items() {
        let parsed = parse_feed(&feed(""), "p1", None).unwrap();
        assert!(parsed.episodes.is_empty());
    }

    #[test]
    fn malformed_date_is_flagged() {
        let item = ITEM.replace("Fri, 15 May 2020 23:30:00 -0400", "sometime in May");
        let parsed = parse_feed(&feed(&item), "p1", None).unwrap();
        let ep = &parsed.episodes[0];
        assert_eq!(ep.meta.publication_date, None);
        assert_eq!(ep.flags, vec![IngestFlag::MalformedDate]);
    }

    #[test]
    fn missing_date_and_bad_duration() {
        let item =
            ITEM.replace("<pubDate>Fri, 15 May 2020 23:30:00 -0400</pubDate>", "").replace("30:00", "half an hour");
        let ep = &parse_feed(&feed(&item), "p1", None).unwrap().episodes[0];
        assert_eq!(ep.flags, vec![IngestFlag::MissingDate, IngestFlag::UnparsedDuration]);
    }

    #[test]
    fn malformed_xml_reports_offset() {
        let raw = "<rss><channel><title>x</titl></channel></rss>";
        match parse_feed(&FeedDocument::new(raw), "p1", None) {
            Err(FeedError::Xml { offset, .. }) => assert!(offset > 0 && offset <= raw.len(), "{offset}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_channel() {
        let err = parse_feed(&FeedDocument::new("<rss version=\"2.0\"></rss>"), "p1", None).unwrap_err();
        assert!(matches!(err, FeedError::MissingChannel { .. }));
    }

    #[test]
    fn platform_from_url() {
        assert_eq!(hosting_platform("https://feeds.soundcloud.com/users/1/sounds.rss"), "soundcloud");
        assert_eq!(hosting_platform("http://www.example.org:8080/feed"), "example.org");
        assert_eq!(hosting_platform("not a url"), "unknown");
    }

    #[test]
    fn slugs_are_safe() {
        assert_eq!(episode_slug("ep-1"), "ep-1");
        let s = episode_slug("https://example.org/ep?id=1");
        assert_eq!(s.len(), 16);
        assert!(s.bytes().all(|b| b.is_ascii_hexdigit()));
    }
}
