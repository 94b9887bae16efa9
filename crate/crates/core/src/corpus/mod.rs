//! Ingestion of time-stamped short texts.
//!
//! Input rows come from JSONL or CSV with the fields `id`, `text`,
//! `created_at` (ISO-8601 with an explicit offset) and an optional `lang`.
//! Rows that fail the schema are reported back individually; only broken
//! UTF-8 or an unknown format aborts the whole parse.

mod lang;
mod tokenize;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lang::{detect_language, resolve_language, Lang, Stopwords};
pub use tokenize::tokenize;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TweetRecord {
    pub id: String,
    pub text: String,
    /// Seconds since the Unix epoch, UTC.
    pub timestamp: i64,
    /// `created_at` exactly as it appeared in the input.
    pub created_at: String,
    pub lang: Lang,
    pub tokens: Vec<String>,
}

impl TweetRecord {
    pub fn datetime(&self) -> DateTime<Utc> {
        DateTime::from_timestamp(self.timestamp, 0).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    pub records: Vec<TweetRecord>,
    pub dedup_dropped: usize,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Jsonl,
    Csv,
}

impl FromStr for Format {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "jsonl" | "ndjson" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            other => Err(CorpusError::UnknownFormat(other.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Jsonl => "jsonl",
            Format::Csv => "csv",
        })
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("input is not valid UTF-8 (byte offset {0})")]
    Utf8(usize),
    #[error("unknown corpus format {0:?} (expected jsonl or csv)")]
    UnknownFormat(String),
    #[error("csv header is missing required column {0:?}")]
    MissingColumn(&'static str),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("serialize: {0}")]
    Serialize(String),
}

/// A row that could not be turned into a record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowError {
    /// 1-based line (JSONL) or record (CSV, header excluded) number.
    pub row: usize,
    pub message: String,
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {}: {}", self.row, self.message)
    }
}

#[derive(Debug, Clone)]
pub struct ParseOptions {
    pub dedup: bool,
    pub stopwords: Stopwords,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { dedup: true, stopwords: Stopwords::bundled() }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Parsed {
    pub corpus: Corpus,
    pub errors: Vec<RowError>,
}

#[derive(Debug, Deserialize)]
struct RawRow {
    id: Option<serde_json::Value>,
    text: Option<String>,
    created_at: Option<String>,
    lang: Option<String>,
}

/// Parses a corpus file, sorts it by time (ties by id) and optionally drops
/// exact duplicate texts, keeping the earliest.
pub fn parse_tweets(input: &[u8], format: Format, opts: &ParseOptions) -> Result<Parsed, CorpusError> {
    let text = std::str::from_utf8(input).map_err(|e| CorpusError::Utf8(e.valid_up_to()))?;
    let mut errors = Vec::new();
    let mut records = Vec::new();

    let rows = match format {
        Format::Jsonl => jsonl_rows(text, &mut errors),
        Format::Csv => csv_rows(text, &mut errors)?,
    };
    for (row, raw) in rows {
        match build_record(raw, opts) {
            Ok(rec) => records.push(rec),
            Err(message) => errors.push(RowError { row, message }),
        }
    }
    errors.sort_by_key(|e| e.row);

    records.sort_by(|a, b| a.timestamp.cmp(&b.timestamp).then_with(|| a.id.cmp(&b.id)));

    let mut dedup_dropped = 0;
    if opts.dedup {
        let mut seen = HashSet::new();
        records.retain(|r| {
            let keep = seen.insert(normalize_text(&r.text));
            if !keep {
                dedup_dropped += 1;
            }
            keep
        });
    }

    Ok(Parsed { corpus: Corpus { records, dedup_dropped }, errors })
}

/// Whitespace-trimmed text with internal whitespace runs collapsed; the key
/// used for duplicate detection.
pub fn normalize_text(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn jsonl_rows(text: &str, errors: &mut Vec<RowError>) -> Vec<(usize, RawRow)> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<RawRow>(line) {
            Ok(raw) => rows.push((i + 1, raw)),
            Err(e) => errors.push(RowError { row: i + 1, message: format!("invalid json: {e}") }),
        }
    }
    rows
}

fn csv_rows(text: &str, errors: &mut Vec<RowError>) -> Result<Vec<(usize, RawRow)>, CorpusError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut reader = csv::ReaderBuilder::new().flexible(true).from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let column = |name: &str| headers.iter().position(|h| h.trim() == name);
    let id_col = column("id").ok_or(CorpusError::MissingColumn("id"))?;
    let text_col = column("text").ok_or(CorpusError::MissingColumn("text"))?;
    let ts_col = column("created_at").ok_or(CorpusError::MissingColumn("created_at"))?;
    let lang_col = column("lang");

    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = match rec {
            Ok(rec) => rec,
            Err(e) => {
                errors.push(RowError { row: i + 1, message: e.to_string() });
                continue;
            }
        };
        let field = |col: usize| rec.get(col).map(str::to_string);
        rows.push((
            i + 1,
            RawRow {
                id: field(id_col).map(serde_json::Value::String),
                text: field(text_col),
                created_at: field(ts_col).filter(|s| !s.is_empty()),
                lang: lang_col.and_then(field).filter(|s| !s.is_empty()),
            },
        ));
    }
    Ok(rows)
}

fn build_record(raw: RawRow, opts: &ParseOptions) -> Result<TweetRecord, String> {
    let id = match raw.id {
        Some(serde_json::Value::String(s)) if !s.is_empty() => s,
        Some(serde_json::Value::Number(n)) => n.to_string(),
        _ => return Err("missing id".into()),
    };
    let text = raw.text.ok_or_else(|| format!("record {id}: missing text"))?;
    let created_at = raw.created_at.ok_or_else(|| format!("record {id}: missing created_at"))?;
    let timestamp = parse_timestamp(&created_at).map_err(|e| format!("record {id}: {e}"))?;
    let tokens = tokenize(&text);
    let (lang, _) = resolve_language(raw.lang.as_deref(), &tokens, &opts.stopwords);
    Ok(TweetRecord { id, text, timestamp, created_at, lang, tokens })
}

/// ISO-8601 / RFC 3339 instant with `Z` or an explicit offset, as UTC seconds.
pub fn parse_timestamp(s: &str) -> Result<i64, String> {
    DateTime::parse_from_rfc3339(s.trim())
        .map(|dt| dt.with_timezone(&Utc).timestamp())
        .map_err(|e| format!("bad timestamp {s:?}: {e}"))
}

pub fn format_timestamp(ts: i64) -> String {
    DateTime::from_timestamp(ts, 0)
        .unwrap_or_default()
        .to_rfc3339_opts(SecondsFormat::Secs, true)
}

#[derive(Serialize)]
struct OutRow<'a> {
    id: &'a str,
    text: &'a str,
    created_at: &'a str,
    lang: &'a str,
}

/// Writes a corpus back out in the given format. The language is always
/// written as an explicit tag so that a re-parse reproduces it.
pub fn serialize_corpus(corpus: &Corpus, format: Format) -> Result<Vec<u8>, CorpusError> {
    let rows = corpus.records.iter().map(|r| OutRow {
        id: &r.id,
        text: &r.text,
        created_at: &r.created_at,
        lang: r.lang.code(),
    });
    match format {
        Format::Jsonl => {
            let mut out = Vec::new();
            for row in rows {
                serde_json::to_writer(&mut out, &row).map_err(|e| CorpusError::Serialize(e.to_string()))?;
                out.push(b'\n');
            }
            Ok(out)
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(["id", "text", "created_at", "lang"])?;
            for row in rows {
                writer.write_record([row.id, row.text, row.created_at, row.lang])?;
            }
            writer.into_inner().map_err(|e| CorpusError::Serialize(e.to_string()))
        }
    }
}
