//! Flat `key = value` configuration with per-key command-line overrides.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::PipelineError;
use crate::corpus::Format;
use crate::esd::EsdConfig;
use crate::sentiment::{ModelConfig, TrainConfig};

/// Every recognized key with its default (`None` = unset).
pub const KEYS: &[(&str, Option<&str>, &str)] = &[
    ("corpus", None, "tweet corpus (JSONL or CSV)"),
    ("corpus_format", None, "jsonl | csv (default: from extension)"),
    ("embeddings", None, "aligned embedding files, comma-separated; earlier files win"),
    ("source_embeddings", None, "align: vectors to map"),
    ("target_embeddings", None, "align: reference space"),
    ("dictionary", None, "align: bilingual seed dictionary"),
    ("aligned", None, "align: output file (default: <out_dir>/aligned.vec)"),
    ("weights", None, "scorer weight file (train writes it)"),
    ("train_data", None, "labeled examples (JSONL or CSV with text,label)"),
    ("train_format", None, "jsonl | csv (default: from extension)"),
    ("stopwords", None, "directory with stopwords.<lang>.txt (default: bundled)"),
    ("scored", None, "report: scored records (default: <out_dir>/scored.jsonl)"),
    ("out_dir", Some("out"), "output directory"),
    ("scorer", Some("lstm"), "lstm | baseline"),
    ("alpha", Some("0.05"), "ESD significance level"),
    ("max_outliers", None, "ESD upper bound r (default: ceil(0.05 n))"),
    ("detrend", Some("false"), "run ESD on scores minus their moving average"),
    ("window", Some("25"), "moving-average window"),
    ("gap", Some("5"), "max index gap inside one outlier region"),
    ("top_k", Some("50"), "terms kept per region"),
    ("dedup", Some("true"), "drop repeated texts"),
    ("seed", Some("0"), "random seed"),
    ("hidden_dim", Some("300"), "LSTM hidden units per direction"),
    ("layers", Some("2"), "LSTM layers"),
    ("bidirectional", Some("true"), "bidirectional LSTM"),
    ("epochs", Some("4"), "training epochs"),
    ("learning_rate", Some("0.1"), "SGD learning rate"),
    ("batch_size", Some("16"), "SGD batch size"),
    ("clip_norm", Some("5.0"), "gradient clipping norm"),
    ("fixed_clock", Some("false"), "stamp reports with the epoch instead of the current time"),
];

/// Canonical key form: `out-dir` and `out_dir` are the same key.
pub fn canonical_key(key: &str) -> String {
    key.trim().replace('-', "_")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScorerKind {
    Lstm,
    Baseline,
}

impl ScorerKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ScorerKind::Lstm => "lstm",
            ScorerKind::Baseline => "baseline",
        }
    }
}

impl FromStr for ScorerKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lstm" => Ok(ScorerKind::Lstm),
            "baseline" => Ok(ScorerKind::Baseline),
            _ => Err(format!("unknown scorer {s:?} (expected lstm or baseline)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    /// Effective settings, defaults included; echoed into reports.
    values: BTreeMap<String, String>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let values = KEYS.iter().filter_map(|(k, d, _)| d.map(|d| (k.to_string(), d.to_string()))).collect();
        PipelineConfig { values }
    }
}

impl PipelineConfig {
    /// Parses the file format: `key = value` lines, `#` comments, blank lines.
    pub fn parse(text: &str) -> Result<Vec<(String, String)>, PipelineError> {
        let mut out = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| PipelineError::Config(format!("line {}: expected key = value", n + 1)))?;
            let key = canonical_key(k);
            if out.iter().any(|(seen, _): &(String, String)| *seen == key) {
                return Err(PipelineError::Config(format!("line {}: duplicate key {key}", n + 1)));
            }
            out.push((key, v.trim().to_string()));
        }
        Ok(out)
    }

    pub fn load(path: &Path) -> Result<Vec<(String, String)>, PipelineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PipelineError::Input(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Applies `pairs` in order (later wins) and validates every value.
    pub fn with(mut self, pairs: impl IntoIterator<Item = (String, String)>) -> Result<Self, PipelineError> {
        for (k, v) in pairs {
            let key = canonical_key(&k);
            if !KEYS.iter().any(|(name, _, _)| *name == key) {
                return Err(PipelineError::Config(format!("unknown key {key}")));
            }
            self.values.insert(key, v);
        }
        self.validate()?;
        Ok(self)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, String)>) -> Result<Self, PipelineError> {
        Self::default().with(pairs)
    }

    fn validate(&self) -> Result<(), PipelineError> {
        self.esd()?;
        self.train()?;
        self.model(1)?;
        self.scorer()?;
        self.corpus_format()?;
        self.train_format()?;
        for key in ["window", "gap", "top_k"] {
            self.parsed::<usize>(key)?;
        }
        for key in ["dedup", "detrend", "fixed_clock"] {
            self.parsed::<bool>(key)?;
        }
        if self.window()? == 0 {
            return Err(PipelineError::Config("window must be at least 1".into()));
        }
        Ok(())
    }

    pub fn values(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str).filter(|v| !v.is_empty())
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<T, PipelineError>
    where
        T::Err: std::fmt::Display,
    {
        let raw = self.get(key).ok_or_else(|| PipelineError::Config(format!("missing value for {key}")))?;
        raw.parse().map_err(|e| PipelineError::Config(format!("{key} = {raw:?}: {e}")))
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.get(key).map(PathBuf::from)
    }

    /// An input path that must be set and exist.
    pub fn input_path(&self, key: &str) -> Result<PathBuf, PipelineError> {
        let p = self.path(key).ok_or_else(|| PipelineError::Input(format!("no {key} configured")))?;
        if !p.exists() {
            return Err(PipelineError::Input(format!("{key} file {} does not exist", p.display())));
        }
        Ok(p)
    }

    pub fn embedding_paths(&self) -> Result<Vec<PathBuf>, PipelineError> {
        let raw = self.get("embeddings").ok_or_else(|| PipelineError::Input("no embeddings configured".into()))?;
        let paths: Vec<PathBuf> = raw.split(',').map(str::trim).filter(|s| !s.is_empty()).map(PathBuf::from).collect();
        for p in &paths {
            if !p.exists() {
                return Err(PipelineError::Input(format!("embeddings file {} does not exist", p.display())));
            }
        }
        Ok(paths)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.path("out_dir").unwrap_or_else(|| PathBuf::from("out"))
    }

    pub fn out_path(&self, key: &str, default_name: &str) -> PathBuf {
        self.path(key).unwrap_or_else(|| self.out_dir().join(default_name))
    }

    pub fn scorer(&self) -> Result<ScorerKind, PipelineError> {
        self.parsed("scorer")
    }

    fn format(&self, key: &str, path_key: &str) -> Result<Option<Format>, PipelineError> {
        if let Some(raw) = self.get(key) {
            return raw.parse().map(Some).map_err(|e| PipelineError::Config(format!("{key}: {e}")));
        }
        Ok(self.path(path_key).map(|p| match p.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Jsonl,
        }))
    }

    pub fn corpus_format(&self) -> Result<Option<Format>, PipelineError> {
        self.format("corpus_format", "corpus")
    }

    pub fn train_format(&self) -> Result<Option<Format>, PipelineError> {
        self.format("train_format", "train_data")
    }

    pub fn esd(&self) -> Result<EsdConfig, PipelineError> {
        let alpha: f64 = self.parsed("alpha")?;
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(PipelineError::Config(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        let max_outliers = match self.get("max_outliers") {
            None | Some("auto") => None,
            Some(_) => Some(self.parsed::<usize>("max_outliers")?),
        };
        Ok(EsdConfig { alpha, max_outliers })
    }

    pub fn window(&self) -> Result<usize, PipelineError> {
        self.parsed("window")
    }

    pub fn gap(&self) -> Result<usize, PipelineError> {
        self.parsed("gap")
    }

    pub fn top_k(&self) -> Result<usize, PipelineError> {
        self.parsed("top_k")
    }

    pub fn dedup(&self) -> Result<bool, PipelineError> {
        self.parsed("dedup")
    }

    pub fn detrend(&self) -> Result<bool, PipelineError> {
        self.parsed("detrend")
    }

    pub fn fixed_clock(&self) -> Result<bool, PipelineError> {
        self.parsed("fixed_clock")
    }

    pub fn seed(&self) -> Result<u64, PipelineError> {
        self.parsed("seed")
    }

    pub fn model(&self, embed_dim: usize) -> Result<ModelConfig, PipelineError> {
        let cfg = ModelConfig {
            embed_dim,
            hidden_dim: self.parsed("hidden_dim")?,
            layers: self.parsed("layers")?,
            bidirectional: self.parsed("bidirectional")?,
        };
        cfg.validate().map_err(|e| PipelineError::Config(e.to_string()))?;
        Ok(cfg)
    }

    pub fn train(&self) -> Result<TrainConfig, PipelineError> {
        let cfg = TrainConfig {
            epochs: self.parsed("epochs")?,
            learning_rate: self.parsed("learning_rate")?,
            batch_size: self.parsed("batch_size")?,
            clip_norm: self.parsed("clip_norm")?,
            seed: self.parsed("seed")?,
            ..TrainConfig::default()
        };
        cfg.validate().map_err(|e| PipelineError::Config(e.to_string()))?;
        Ok(cfg)
    }
}
