use std::io::Write;
use std::path::Path;

use super::{TimeSeries, TopicModel, TopicsError};
use crate::model::EpisodeTopics;

type Result<T> = std::result::Result<T, TopicsError>;

struct Csv<'a> {
    path: &'a Path,
    inner: csv::Writer<std::fs::File>,
}

impl<'a> Csv<'a> {
    fn create(path: &'a Path) -> Result<Self> {
        let inner =
            csv::Writer::from_path(path).map_err(|source| TopicsError::Csv { path: path.to_path_buf(), source })?;
        Ok(Csv { path, inner })
    }

    fn row<I, S>(&mut self, fields: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.inner.write_record(fields).map_err(|source| TopicsError::Csv { path: self.path.to_path_buf(), source })
    }

    fn finish(mut self) -> Result<()> {
        self.inner.flush().map_err(|source| TopicsError::Io { path: self.path.to_path_buf(), source })
    }
}

/// K × V count matrix; the header row lists the vocabulary in id order.
pub fn write_topic_word_csv(model: &TopicModel, path: &Path) -> Result<()> {
    let mut w = Csv::create(path)?;
    w.row(std::iter::once("topic").chain(model.vocabulary.words().iter().map(String::as_str)))?;
    for t in 0..model.k {
        w.row(std::iter::once(t.to_string()).chain(model.topic_word_row(t).iter().map(u32::to_string)))?;
    }
    w.finish()
}

/// One word per line, line number = word id.
pub fn write_vocabulary(model: &TopicModel, path: &Path) -> Result<()> {
    let io = |source| TopicsError::Io { path: path.to_path_buf(), source };
    let mut f = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    for word in model.vocabulary.words() {
        writeln!(f, "{word}").map_err(io)?;
    }
    f.flush().map_err(io)
}

/// `episode_id,topic_0,…` with one row per episode.
pub fn write_theta_csv(rows: &[EpisodeTopics], path: &Path) -> Result<()> {
    let mut w = Csv::create(path)?;
    let k = rows.first().map_or(0, |r| r.theta.len());
    w.row(std::iter::once("episode_id".to_string()).chain((0..k).map(|t| format!("topic_{t}"))))?;
    for r in rows {
        w.row(std::iter::once(r.episode_id.clone()).chain(r.theta.iter().map(|x| format!("{x:.12}"))))?;
    }
    w.finish()
}

pub fn write_top_words_csv(model: &TopicModel, n: usize, path: &Path) -> Result<()> {
    let mut w = Csv::create(path)?;
    w.row(["topic", "top_words"])?;
    for t in 0..model.k {
        w.row([t.to_string(), model.top_words(t, n)?.join(" ")])?;
    }
    w.finish()
}

/// `date,value,ci_low,ci_high,n`; gap days leave the numeric fields empty.
pub fn write_series_csv(series: &TimeSeries, path: &Path) -> Result<()> {
    let mut w = Csv::create(path)?;
    w.row(["date", "value", "ci_low", "ci_high", "n"])?;
    let fmt = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_default();
    for p in &series.points {
        w.row([p.date.to_string(), fmt(p.value), fmt(p.ci_low), fmt(p.ci_high), p.n.to_string()])?;
    }
    w.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topics::{build_corpus, fit_lda, mention_rate, LdaConfig};
    use chrono::NaiveDate;

    #[test]
    fn files() {
        let c = build_corpus([("a", vec!["x".to_string(), "y".into()]), ("b", vec!["y".into()])]);
        let m = fit_lda(&c, &LdaConfig { k: 1, iterations: 2, ..Default::default() }).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = |n: &str| dir.path().join(n);
        write_topic_word_csv(&m, &p("tw.csv")).unwrap();
        write_vocabulary(&m, &p("vocab.txt")).unwrap();
        write_top_words_csv(&m, 5, &p("top.csv")).unwrap();
        assert_eq!(std::fs::read_to_string(p("tw.csv")).unwrap(), "topic,x,y\n0,1,2\n");
        assert_eq!(std::fs::read_to_string(p("vocab.txt")).unwrap(), "x\ny\n");
        assert_eq!(std::fs::read_to_string(p("top.csv")).unwrap(), "topic,top_words\n0,y x\n");

        let d = |day| NaiveDate::from_ymd_opt(2020, 6, day).unwrap();
        let s = mention_rate(&[(d(1), true), (d(1), false), (d(3), false), (d(3), false)], 3).unwrap();
        write_series_csv(&s.daily, &p("s.csv")).unwrap();
        let text = std::fs::read_to_string(p("s.csv")).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "date,value,ci_low,ci_high,n");
        assert!(lines[1].starts_with("2020-06-01,50.000000,"));
        assert_eq!(lines[2], "2020-06-02,,,,0");
        assert_eq!(lines[3], "2020-06-03,0.000000,0.000000,0.000000,2");
    }
}
