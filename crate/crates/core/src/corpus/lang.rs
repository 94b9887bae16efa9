use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lang {
    En,
    De,
    Es,
    Unknown,
}

impl Lang {
    /// Known languages in tie-break priority order.
    pub const KNOWN: [Lang; 3] = [Lang::En, Lang::De, Lang::Es];

    pub fn code(self) -> &'static str {
        match self {
            Lang::En => "en",
            Lang::De => "de",
            Lang::Es => "es",
            Lang::Unknown => "unknown",
        }
    }

    /// Maps a BCP-47-ish tag onto the supported set. Any primary subtag other
    /// than en/de/es is `Unknown`.
    pub fn from_tag(tag: &str) -> Lang {
        let primary = tag.trim().split(['-', '_']).next().unwrap_or("");
        match primary.to_ascii_lowercase().as_str() {
            "en" => Lang::En,
            "de" => Lang::De,
            "es" => Lang::Es,
            _ => Lang::Unknown,
        }
    }
}

impl fmt::Display for Lang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Lang {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Lang::from_tag(s))
    }
}

/// Function-word lists for the supported languages.
#[derive(Debug, Clone, Default)]
pub struct Stopwords {
    en: HashSet<String>,
    de: HashSet<String>,
    es: HashSet<String>,
}

const BUNDLED_EN: &str = include_str!("../../data/stopwords.en.txt");
const BUNDLED_DE: &str = include_str!("../../data/stopwords.de.txt");
const BUNDLED_ES: &str = include_str!("../../data/stopwords.es.txt");

fn parse_list(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_lowercase)
        .collect()
}

impl Stopwords {
    pub fn bundled() -> Self {
        Stopwords {
            en: parse_list(BUNDLED_EN),
            de: parse_list(BUNDLED_DE),
            es: parse_list(BUNDLED_ES),
        }
    }

    /// Reads `stopwords.{en,de,es}.txt` from `dir`. Missing files fall back to
    /// the bundled list for that language.
    pub fn from_dir(dir: &Path) -> std::io::Result<Self> {
        let mut lists = Self::bundled();
        for lang in Lang::KNOWN {
            let path = dir.join(format!("stopwords.{}.txt", lang.code()));
            if path.exists() {
                let text = std::fs::read_to_string(&path)?;
                *lists.list_mut(lang) = parse_list(&text);
            }
        }
        Ok(lists)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    fn list_mut(&mut self, lang: Lang) -> &mut HashSet<String> {
        match lang {
            Lang::En | Lang::Unknown => &mut self.en,
            Lang::De => &mut self.de,
            Lang::Es => &mut self.es,
        }
    }

    /// The list for `lang`; `Unknown` has none.
    pub fn get(&self, lang: Lang) -> Option<&HashSet<String>> {
        match lang {
            Lang::En => Some(&self.en),
            Lang::De => Some(&self.de),
            Lang::Es => Some(&self.es),
            Lang::Unknown => None,
        }
    }

    pub fn contains(&self, lang: Lang, token: &str) -> bool {
        self.get(lang).is_some_and(|l| l.contains(token))
    }
}

/// Guesses the language of a token list by counting stopword hits.
///
/// Returns `(lang, hits / tokens)`. Ties go to en, then de, then es; no hits
/// at all gives `(Unknown, 0.0)`.
pub fn detect_language(tokens: &[String], stopwords: &Stopwords) -> (Lang, f64) {
    if tokens.is_empty() {
        return (Lang::Unknown, 0.0);
    }
    let mut best = (Lang::Unknown, 0usize);
    for lang in Lang::KNOWN {
        let hits = tokens.iter().filter(|t| stopwords.contains(lang, t)).count();
        if hits > best.1 {
            best = (lang, hits);
        }
    }
    match best {
        (_, 0) => (Lang::Unknown, 0.0),
        (lang, hits) => (lang, hits as f64 / tokens.len() as f64),
    }
}

/// Like [`detect_language`], but an explicit tag on the record wins with
/// confidence 1.
pub fn resolve_language(tag: Option<&str>, tokens: &[String], stopwords: &Stopwords) -> (Lang, f64) {
    match tag.map(str::trim).filter(|t| !t.is_empty()) {
        Some(tag) => (Lang::from_tag(tag), 1.0),
        None => detect_language(tokens, stopwords),
    }
}
