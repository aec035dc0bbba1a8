//! Writes the bundled synthetic mini-corpus (feeds, transcripts, prosodic
//! frames, diarization and a pipeline config).
//!
//! ```text
//! cargo run -p podcorpus-core --example make_minicorpus -- crates/core/tests/fixtures/minicorpus
//! ```

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use flate2::write::GzEncoder;
use flate2::Compression;
use podcorpus::model::{write_jsonl, WordRecord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const WORD_S: f64 = 0.3;
const STEP_S: f64 = 0.35;

struct Show {
    id: &'static str,
    title: &'static str,
    category: &'static str,
    host: &'static str,
    feed_url: &'static str,
    host_f0: f64,
    topic: usize,
}

const SHOWS: [Show; 6] = [
    Show {
        id: "p01",
        title: "Voices of the Sideline",
        category: "Sports",
        host: "Carla Mendes",
        feed_url: "https://anchor.fm/s/sideline/podcast/rss",
        host_f0: 21.0,
        topic: 0,
    },
    Show {
        id: "p02",
        title: "Full Court Press Daily",
        category: "Sports",
        host: "Derek Okafor",
        feed_url: "https://feeds.libsyn.com/fullcourt/rss",
        host_f0: 15.0,
        topic: 0,
    },
    Show {
        id: "p03",
        title: "The Morning Ledger Report",
        category: "News",
        host: "Helen Marsh",
        feed_url: "https://feeds.megaphone.fm/ledger",
        host_f0: 22.0,
        topic: 1,
    },
    Show {
        id: "p04",
        title: "Signals from the Capitol",
        category: "News",
        host: "Victor Lang",
        feed_url: "https://feeds.buzzsprout.com/capitol.rss",
        host_f0: 16.0,
        topic: 1,
    },
    Show {
        id: "p05",
        title: "Light for Sunday",
        category: "Religion",
        host: "Ruth Adeyemi",
        feed_url: "https://sundaylight.podbean.com/feed.xml",
        host_f0: 20.0,
        topic: 2,
    },
    Show {
        id: "p06",
        title: "Markets in Motion",
        category: "Business",
        host: "Simon Frey",
        feed_url: "https://feeds.simplecast.com/markets",
        host_f0: 14.0,
        topic: 3,
    },
];

/// (show index, day of 2020, month, guest)
const EPISODES: [(usize, u32, u32, Option<&str>); 20] = [
    (0, 5, 20, Some("Tobias Wrenfield")),
    (0, 5, 27, Some("Lucius Brightwater")),
    (0, 6, 3, Some("John Smith")),
    (0, 6, 10, None),
    (1, 5, 22, Some("Tobias Wrenfield")),
    (1, 5, 29, Some("John Miller")),
    (1, 6, 5, Some("Mary Smith")),
    (1, 6, 12, None),
    (2, 5, 24, Some("Amara Quayle")),
    (2, 5, 28, Some("Nadia Petrov")),
    (2, 6, 1, Some("Mary Miller")),
    (2, 6, 4, Some("John Davis")),
    (3, 5, 26, Some("Amara Quayle")),
    (3, 5, 30, Some("Mary Davis")),
    (3, 6, 2, Some("John Brown")),
    (3, 6, 6, None),
    (4, 5, 31, Some("Nadia Petrov")),
    (4, 6, 7, None),
    (5, 5, 21, Some("Lucius Brightwater")),
    (5, 6, 8, Some("Mary Brown")),
];

/// Episode whose transcript file is truncated mid-line.
const MALFORMED: (usize, usize) = (3, 3);
/// Episode whose transcript runs past the advertised duration.
const LONG_TAIL: (usize, usize) = (1, 1);
/// Episode with a brief third speaker below the share threshold.
const MINOR_SPEAKER: (usize, usize) = (0, 0);

const TOPIC_WORDS: [&[&str]; 5] = [
    &[
        "game",
        "season",
        "coach",
        "playoffs",
        "team",
        "score",
        "defense",
        "quarterback",
        "league",
        "trade",
        "draft",
        "pitcher",
        "inning",
        "basketball",
        "baseball",
        "points",
        "roster",
        "injury",
        "stadium",
        "fans",
        "championship",
        "rookie",
        "contract",
        "offense",
    ],
    &[
        "election",
        "senate",
        "policy",
        "governor",
        "vote",
        "campaign",
        "congress",
        "budget",
        "report",
        "reporter",
        "bill",
        "court",
        "ruling",
        "investigation",
        "press",
        "statement",
        "administration",
        "poll",
        "legislation",
        "agency",
        "official",
        "hearing",
        "testimony",
        "briefing",
    ],
    &[
        "faith",
        "prayer",
        "scripture",
        "church",
        "grace",
        "gospel",
        "worship",
        "spirit",
        "psalm",
        "sermon",
        "blessing",
        "congregation",
        "heaven",
        "forgiveness",
        "salvation",
        "mercy",
        "pastor",
        "verse",
        "ministry",
        "hope",
        "praise",
        "bible",
        "lord",
        "disciples",
    ],
    &[
        "market",
        "stocks",
        "investors",
        "earnings",
        "revenue",
        "inflation",
        "rates",
        "startup",
        "portfolio",
        "dividend",
        "growth",
        "valuation",
        "capital",
        "shares",
        "economy",
        "bonds",
        "profit",
        "quarter",
        "fund",
        "trading",
        "merger",
        "bitcoin",
        "assets",
        "debt",
    ],
    &[
        "protest",
        "police",
        "justice",
        "racism",
        "officers",
        "reform",
        "minneapolis",
        "marches",
        "equality",
        "accountability",
        "rally",
        "activists",
        "systemic",
        "civil",
        "rights",
        "demonstrators",
        "movement",
        "unrest",
        "solidarity",
        "community",
    ],
];

const GENERIC: &[&str] = &[
    "people",
    "time",
    "year",
    "week",
    "story",
    "question",
    "answer",
    "idea",
    "work",
    "world",
    "life",
    "family",
    "plan",
    "history",
    "future",
    "problem",
    "moment",
    "number",
    "point",
    "change",
    "country",
    "city",
    "money",
    "group",
    "decision",
    "experience",
    "conversation",
    "listeners",
    "morning",
    "evening",
    "important",
    "different",
    "small",
    "large",
    "early",
    "late",
    "hard",
    "easy",
    "new",
    "old",
];

const FILLER: &[&str] = &[
    "the", "and", "of", "to", "we", "it", "is", "that", "so", "really", "just", "you", "know", "a", "in", "this",
    "was", "for", "they", "but", "about", "like", "i", "think", "what", "there", "with", "on", "have", "be",
];

fn pick<'a>(rng: &mut ChaCha8Rng, list: &[&'a str]) -> &'a str {
    list[rng.random_range(0..list.len())]
}

fn sentence(rng: &mut ChaCha8Rng, topics: &[usize], out: &mut Vec<String>) {
    let n = rng.random_range(8..15);
    for i in 0..n {
        let r: f64 = rng.random();
        let w = if r < 0.45 {
            let t = topics[rng.random_range(0..topics.len())];
            pick(rng, TOPIC_WORDS[t])
        } else if r < 0.55 {
            pick(rng, GENERIC)
        } else {
            pick(rng, FILLER)
        };
        out.push(if i + 1 == n { format!("{w}.") } else { w.to_string() });
    }
}

fn words_of(text: &str) -> Vec<String> {
    text.split_whitespace().map(String::from).collect()
}

struct Script {
    tokens: Vec<String>,
    /// (speaker, first word, last word inclusive)
    blocks: Vec<(&'static str, usize, usize)>,
}

fn script(rng: &mut ChaCha8Rng, show: &Show, n: usize, date: NaiveDate, guest: Option<&str>) -> Script {
    let after_event = date >= NaiveDate::from_ymd_opt(2020, 5, 26).unwrap();
    let mut topics = vec![show.topic];
    if after_event && show.topic == 1 {
        topics.push(4);
    }
    let mut blocks = Vec::new();
    let mut tokens = words_of(&format!(
        "Hello everyone and welcome to {}. I'm your host {} and this is episode {}.",
        show.title,
        show.host,
        n + 1
    ));
    match guest {
        Some(g) => tokens.extend(words_of(&format!("My guest today is {g}. so glad to have you here."))),
        None => tokens.extend(words_of("today it is just me with a few thoughts.")),
    }
    if n == 1 {
        tokens.extend(words_of("I was reading a column by Ezra Klein about this last week."));
    }
    blocks.push(("SPEAKER_00", 0, tokens.len() - 1));

    let turns = rng.random_range(6..9);
    for t in 0..turns {
        let speaker = if guest.is_some() && t % 2 == 0 { "SPEAKER_01" } else { "SPEAKER_00" };
        let start = tokens.len();
        if t == 0 && guest.is_some() {
            tokens.extend(words_of("thanks for having me. it is great to be here."));
        }
        let sentences = rng.random_range(3..6);
        for s in 0..sentences {
            if after_event && t == 2 && s == 0 && show.topic != 2 {
                tokens.extend(words_of("we have to talk about George Floyd and what happened in minneapolis."));
            }
            sentence(rng, &topics, &mut tokens);
        }
        match blocks.last_mut() {
            Some(last) if last.0 == speaker => last.2 = tokens.len() - 1,
            _ => blocks.push((speaker, start, tokens.len() - 1)),
        }
    }
    tokens.extend(words_of("thanks for listening and see you next time."));
    let last = blocks.len() - 1;
    blocks[last].2 = tokens.len() - 1;
    Script { tokens, blocks }
}

fn start_of(i: usize) -> f64 {
    i as f64 * STEP_S
}

fn rfc2822(date: NaiveDate) -> String {
    date.and_hms_opt(10, 0, 0).unwrap().and_utc().to_rfc2822()
}

fn hms(total: u64) -> String {
    format!("{:02}:{:02}:{:02}", total / 3600, total / 60 % 60, total % 60)
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
}

fn main() {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("crates/core/tests/fixtures/minicorpus"));
    for sub in ["feeds", "transcripts", "frames", "diarization"] {
        fs::create_dir_all(out.join(sub)).unwrap();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2020);
    let mut items: Vec<String> = vec![String::new(); SHOWS.len()];
    let mut per_show = [0usize; 6];

    for &(si, month, day, guest) in &EPISODES {
        let show = &SHOWS[si];
        let n = per_show[si];
        per_show[si] += 1;
        let date = NaiveDate::from_ymd_opt(2020, month, day).unwrap();
        let guid = format!("ep-{:02}", n + 1);
        let episode_id = format!("{}.{guid}", show.id);
        let sc = script(&mut rng, show, n, date, guest);

        let end_s = start_of(sc.tokens.len() - 1) + WORD_S;
        let duration = if (si, n) == LONG_TAIL { (end_s - 4.0) as u64 } else { end_s.ceil() as u64 + 30 };
        let duration_text = if si == 4 { format!("{}:{:02}", duration / 60, duration % 60) } else { hms(duration) };
        let description = match guest {
            Some(g) => format!("{} talks with {g} about the week.", show.host),
            None => format!("A solo episode from {}.", show.host),
        };
        let _ = write!(
            items[si],
            "    <item>\n      <title>Episode {}</title>\n      <guid isPermaLink=\"false\">{guid}</guid>\n      <pubDate>{}</pubDate>\n      <description><![CDATA[<p>{description}</p>]]></description>\n      <itunes:duration>{duration_text}</itunes:duration>\n      <enclosure url=\"{}/{guid}.mp3\" type=\"audio/mpeg\" length=\"1000\"/>\n    </item>\n",
            n + 1,
            rfc2822(date),
            show.feed_url.trim_end_matches("/rss"),
        );

        let words: Vec<WordRecord> = sc
            .tokens
            .iter()
            .enumerate()
            .map(|(i, t)| WordRecord::new(t.clone(), start_of(i), start_of(i) + WORD_S))
            .collect();
        let path = out.join("transcripts").join(format!("{episode_id}.jsonl"));
        write_jsonl(&path, &words).unwrap();
        if (si, n) == MALFORMED {
            let text = fs::read_to_string(&path).unwrap();
            let mut lines: Vec<&str> = text.lines().collect();
            let cut = &lines[9][..lines[9].len() / 2];
            lines[9] = cut;
            write(&path, &(lines.join("\n") + "\n"));
        }

        let mut diar = String::from("speaker,start_s,end_s\n");
        let mut spans: Vec<(&str, f64, f64)> = Vec::new();
        for (k, &(speaker, a, b)) in sc.blocks.iter().enumerate() {
            // Each new speaker starts 0.4 s before the previous one stops.
            let lead = if k == 0 { 0.0 } else { 0.4 };
            spans.push((speaker, (start_of(a) - lead).max(0.0), start_of(b) + WORD_S));
        }
        if (si, n) == MINOR_SPEAKER {
            let (speaker, a, b) = spans[0];
            let w = (b - a) / STEP_S;
            let mid = a + (w / 2.0).floor() * STEP_S;
            spans[0] = (speaker, a, mid - 0.01);
            spans.insert(1, ("SPEAKER_02", mid - 0.01, mid + 3.0 * STEP_S - 0.04));
            spans.insert(2, (speaker, mid + 3.0 * STEP_S - 0.04, b));
        }
        for (speaker, a, b) in &spans {
            let _ = writeln!(diar, "{speaker},{a:.3},{b:.3}");
        }
        write(&out.join("diarization").join(format!("{episode_id}.csv")), &diar);

        let mut frames = String::from("window_start_s,f0,f1,mfcc1,mfcc2,mfcc3,mfcc4\n");
        let frame_count = (end_s / 0.1).ceil() as usize;
        for k in 0..frame_count {
            let t = k as f64 / 10.0;
            let speaker = spans.iter().rev().find(|(_, a, b)| t >= *a && t < *b).map(|s| s.0).unwrap_or("SPEAKER_00");
            let base = match speaker {
                "SPEAKER_00" => show.host_f0,
                "SPEAKER_01" => 26.0,
                _ => 30.0,
            };
            let f0 = base + rng.random_range(-1.5..1.5);
            let f1 = 500.0 + rng.random_range(-60.0..60.0);
            let m: Vec<String> = (0..4).map(|_| format!("{:.4}", rng.random_range(-10.0..10.0))).collect();
            let _ = writeln!(frames, "{t:.1},{f0:.4},{f1:.4},{}", m.join(","));
        }
        write(&out.join("frames").join(format!("{episode_id}.csv")), &frames);
    }

    // Items that never reach the transcript stage.
    let _ = write!(
        items[2],
        "    <item>\n      <title>Undated bonus</title>\n      <guid>bonus-1</guid>\n      <itunes:duration>12:00</itunes:duration>\n    </item>\n"
    );
    let _ = write!(
        items[5],
        "    <item>\n      <title>Before the window</title>\n      <guid>ep-00</guid>\n      <pubDate>{}</pubDate>\n      <itunes:duration>00:20:00</itunes:duration>\n    </item>\n",
        rfc2822(NaiveDate::from_ymd_opt(2020, 3, 2).unwrap())
    );

    let mut manifest = String::from("podcast_id,feed_path,feed_url\n");
    for (show, body) in SHOWS.iter().zip(&items) {
        let xml = format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<rss version=\"2.0\" xmlns:itunes=\"http://www.itunes.com/dtds/podcast-1.0.dtd\" xmlns:atom=\"http://www.w3.org/2005/Atom\">\n  <channel>\n    <title>{}</title>\n    <atom:link href=\"{}\" rel=\"self\" type=\"application/rss+xml\"/>\n    <language>en-us</language>\n    <description>Hosted by {}.</description>\n    <itunes:category text=\"{}\"/>\n{body}  </channel>\n</rss>\n",
            show.title, show.feed_url, show.host, show.category
        );
        let file = if show.id == "p05" {
            let mut gz = GzEncoder::new(Vec::new(), Compression::default());
            gz.write_all(xml.as_bytes()).unwrap();
            fs::write(out.join("feeds").join(format!("{}.xml.gz", show.id)), gz.finish().unwrap()).unwrap();
            format!("{}.xml.gz", show.id)
        } else {
            write(&out.join("feeds").join(format!("{}.xml", show.id)), &xml);
            format!("{}.xml", show.id)
        };
        let _ = writeln!(manifest, "{},{file},{}", show.id, show.feed_url);
    }
    write(&out.join("feeds").join("manifest.csv"), &manifest);

    write(
        &out.join("pipeline.toml"),
        "[paths]\nmanifest = \"feeds/manifest.csv\"\ntranscripts = \"transcripts\"\nframes = \"frames\"\ndiarization = \"diarization\"\nwork = \"out\"\n\n[scope]\nstart = \"2020-05-01\"\nend = \"2020-06-30\"\nlanguage_prefix = \"en\"\n\n[topics]\nk = 5\niterations = 300\nseed = 7\ntop_words = 10\n\n[series]\ntopics = [3]\nwindow_days = 3\nphrases = [\"george floyd\"]\n\n[run]\nworkers = 2\n",
    );
    write(&out.join(".gitignore"), "out/\n");
    println!("wrote mini-corpus to {}", out.display());
}
