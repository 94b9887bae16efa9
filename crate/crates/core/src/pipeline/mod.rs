//! End-to-end commands: align, train, score, report and analyze.

mod config;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::corpus::{self, Format, ParseOptions, Stopwords};
use crate::embeddings::{self, BilingualDictionary, EmbeddingError, EmbeddingTable};
use crate::esd::{esd_test, EsdError};
use crate::sentiment::{self, BaselineModel, LabeledExample, LstmModel, Scorer, SentimentError, TrainReport};
use crate::timeline::{self, ScorePoint, ScoreSeries};

pub use config::{canonical_key, PipelineConfig, ScorerKind, KEYS};
pub use report::{
    polarity_name, scores_csv, timeline_svg, CorpusStats, DayProfileReport, EsdSummary, ModelInfo, OutlierReport,
    RegionReport, ScoreMeta, ScoredRecord, SCHEMA_VERSION, SCORES_CSV_HEADER,
};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{0}")]
    Input(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("nothing to analyze: {0}")]
    NothingToAnalyze(String),
    #[error("numerical degeneracy: {0}")]
    Degenerate(String),
}

impl PipelineError {
    /// Process exit status: 2 input, 3 nothing to analyze, 4 numerical degeneracy.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Input(_) | PipelineError::Config(_) => 2,
            PipelineError::NothingToAnalyze(_) => 3,
            PipelineError::Degenerate(_) => 4,
        }
    }
}

impl From<EmbeddingError> for PipelineError {
    fn from(e: EmbeddingError) -> Self {
        match e {
            EmbeddingError::Degenerate | EmbeddingError::NonFinite => PipelineError::Degenerate(e.to_string()),
            _ => PipelineError::Input(e.to_string()),
        }
    }
}

impl From<SentimentError> for PipelineError {
    fn from(e: SentimentError) -> Self {
        match e {
            SentimentError::Config(_) => PipelineError::Config(e.to_string()),
            _ => PipelineError::Input(e.to_string()),
        }
    }
}

impl From<EsdError> for PipelineError {
    fn from(e: EsdError) -> Self {
        match e {
            EsdError::ZeroVariance { .. } | EsdError::NonFinite | EsdError::Domain(_) => {
                PipelineError::Degenerate(e.to_string())
            }
            EsdError::TooSmall { .. } => PipelineError::NothingToAnalyze(e.to_string()),
            EsdError::Config(_) => PipelineError::Config(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, PipelineError> {
    fs::read(path).map_err(|e| PipelineError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), PipelineError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| PipelineError::Input(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, bytes).map_err(|e| PipelineError::Input(format!("cannot write {}: {e}", path.display())))
}

fn load_table(path: &Path) -> Result<EmbeddingTable, PipelineError> {
    embeddings::load_embeddings_file(path).map_err(|e| PipelineError::Input(format!("{}: {e}", path.display())))
}

/// Loads and merges the configured embedding files (earlier files win).
pub fn load_embeddings(cfg: &PipelineConfig) -> Result<EmbeddingTable, PipelineError> {
    let tables = cfg.embedding_paths()?.iter().map(|p| load_table(p)).collect::<Result<Vec<_>, _>>()?;
    let (table, shadowed) = EmbeddingTable::merge(&tables)?;
    if shadowed > 0 {
        log::info!("{shadowed} tokens appear in more than one embedding file; the first occurrence wins");
    }
    if table.is_empty() {
        return Err(PipelineError::Input("embedding table is empty".into()));
    }
    Ok(table)
}

pub fn load_stopwords(cfg: &PipelineConfig) -> Result<Stopwords, PipelineError> {
    match cfg.path("stopwords") {
        Some(dir) => Stopwords::from_dir(&dir)
            .map_err(|e| PipelineError::Input(format!("stopwords {}: {e}", dir.display()))),
        None => Ok(Stopwords::bundled()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlignSummary {
    pub output: PathBuf,
    pub pairs_used: usize,
    pub pairs_skipped: usize,
    pub orthogonality_residual: f64,
    pub alignment_error: f64,
}

/// Fits an orthogonal map from the source to the target space on the
/// dictionary pairs and writes the mapped source vectors.
pub fn run_align(cfg: &PipelineConfig) -> Result<AlignSummary, PipelineError> {
    let src_path = cfg.input_path("source_embeddings")?;
    let tgt_path = cfg.input_path("target_embeddings")?;
    let dict_path = cfg.input_path("dictionary")?;
    let source = load_table(&src_path)?;
    let target = load_table(&tgt_path)?;
    let dict = BilingualDictionary::load(BufReader::new(&read(&dict_path)?[..]))
        .map_err(|e| PipelineError::Input(format!("{}: {e}", dict_path.display())))?;
    let (x, y, skipped) = dict.resolve(&source, &target)?;
    let map = embeddings::procrustes_align(&x, &y)?;
    let aligned = map.apply_table(&source)?;
    let output = cfg.out_path("aligned", "aligned.vec");
    write(&output, aligned.to_text().as_bytes())?;
    Ok(AlignSummary {
        output,
        pairs_used: x.rows(),
        pairs_skipped: skipped,
        orthogonality_residual: map.orthogonality_residual(),
        alignment_error: map.alignment_error(&x, &y),
    })
}

#[derive(Deserialize)]
struct LabeledRow {
    text: String,
    label: serde_json::Value,
}

fn parse_label(v: &serde_json::Value) -> Option<u8> {
    match v {
        serde_json::Value::Number(n) => n.as_u64().filter(|&l| l <= 1).map(|l| l as u8),
        serde_json::Value::String(s) => match s.trim() {
            "0" => Some(0),
            "1" => Some(1),
            _ => None,
        },
        serde_json::Value::Bool(b) => Some(u8::from(*b)),
        _ => None,
    }
}

/// Reads labeled training text: JSONL objects or CSV rows with `text` and
/// `label` (0 negative, 1 positive). Bad rows are fatal.
pub fn load_labeled(bytes: &[u8], format: Format) -> Result<Vec<LabeledExample>, PipelineError> {
    let bad = |row: usize, msg: String| PipelineError::Input(format!("training data row {row}: {msg}"));
    let rows: Vec<(usize, LabeledRow)> = match format {
        Format::Jsonl => bytes
            .lines()
            .enumerate()
            .filter(|(_, l)| l.as_ref().map_or(true, |l| !l.trim().is_empty()))
            .map(|(i, l)| {
                let l = l.map_err(|e| bad(i + 1, e.to_string()))?;
                serde_json::from_str(&l).map(|r| (i + 1, r)).map_err(|e| bad(i + 1, e.to_string()))
            })
            .collect::<Result<_, _>>()?,
        Format::Csv => csv::Reader::from_reader(bytes)
            .deserialize::<(String, String)>()
            .enumerate()
            .map(|(i, r)| {
                let (text, label) = r.map_err(|e| bad(i + 1, e.to_string()))?;
                Ok((i + 1, LabeledRow { text, label: serde_json::Value::String(label) }))
            })
            .collect::<Result<_, PipelineError>>()?,
    };
    rows.into_iter()
        .map(|(row, r)| {
            let label = parse_label(&r.label).ok_or_else(|| bad(row, format!("label must be 0 or 1, got {}", r.label)))?;
            Ok(LabeledExample { tokens: corpus::tokenize(&r.text), label })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct TrainSummary {
    pub weights: PathBuf,
    pub metrics: PathBuf,
    pub report: TrainReport,
}

pub fn run_train(cfg: &PipelineConfig) -> Result<TrainSummary, PipelineError> {
    if cfg.scorer()? != ScorerKind::Lstm {
        return Err(PipelineError::Config("train only fits the lstm scorer".into()));
    }
    let data_path = cfg.input_path("train_data")?;
    let examples = load_labeled(&read(&data_path)?, cfg.train_format()?.unwrap_or(Format::Jsonl))?;
    if examples.is_empty() {
        return Err(PipelineError::Input(format!("training data {} is empty", data_path.display())));
    }
    let table = load_embeddings(cfg)?;
    let model_cfg = cfg.model(table.dim())?;
    let (model, report) = sentiment::train(model_cfg, &examples, &table, &cfg.train()?)?;

    let weights = cfg.out_path("weights", "weights.mlsw");
    write(&weights, &model.to_bytes())?;
    let metrics = cfg.out_dir().join("train_metrics.json");
    let mut json = serde_json::to_string_pretty(&report).expect("metrics serialize");
    json.push('\n');
    write(&metrics, json.as_bytes())?;
    Ok(TrainSummary { weights, metrics, report })
}

enum LoadedScorer {
    Lstm(LstmModel),
    Baseline(BaselineModel),
}

impl LoadedScorer {
    fn scorer(&self) -> &dyn Scorer {
        match self {
            LoadedScorer::Lstm(m) => m,
            LoadedScorer::Baseline(m) => m,
        }
    }

    fn info(&self, embed_dim: usize) -> ModelInfo {
        let version = env!("CARGO_PKG_VERSION").to_string();
        match self {
            LoadedScorer::Lstm(m) => ModelInfo {
                scorer: "lstm".into(),
                version,
                embed_dim,
                hidden_dim: Some(m.config.hidden_dim),
                layers: Some(m.config.layers),
                bidirectional: Some(m.config.bidirectional),
            },
            LoadedScorer::Baseline(_) => ModelInfo {
                scorer: "baseline".into(),
                version,
                embed_dim,
                hidden_dim: None,
                layers: None,
                bidirectional: None,
            },
        }
    }
}

fn load_scorer(cfg: &PipelineConfig, embed_dim: usize) -> Result<LoadedScorer, PipelineError> {
    let path = cfg.input_path("weights")?;
    let bytes = read(&path)?;
    let ctx = |e: SentimentError| PipelineError::Input(format!("{}: {e}", path.display()));
    match cfg.scorer()? {
        ScorerKind::Lstm => {
            let model = LstmModel::load_inferred(&bytes[..]).map_err(ctx)?;
            if model.config.embed_dim != embed_dim {
                return Err(PipelineError::Input(format!(
                    "model expects {}-dimensional embeddings, the table has {embed_dim}",
                    model.config.embed_dim
                )));
            }
            Ok(LoadedScorer::Lstm(model))
        }
        ScorerKind::Baseline => Ok(LoadedScorer::Baseline(BaselineModel::load(&bytes[..], embed_dim).map_err(ctx)?)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scored {
    pub records: Vec<ScoredRecord>,
    pub meta: ScoreMeta,
}

fn scored_paths(cfg: &PipelineConfig) -> (PathBuf, PathBuf) {
    let records = cfg.out_path("scored", "scored.jsonl");
    let mut meta = records.clone().into_os_string();
    meta.push(".meta.json");
    (records, PathBuf::from(meta))
}

/// Parses the corpus and scores every record; writes `scored.jsonl` and its
/// `.meta.json` sidecar.
pub fn run_score(cfg: &PipelineConfig) -> Result<Scored, PipelineError> {
    let corpus_path = cfg.input_path("corpus")?;
    let stopwords = load_stopwords(cfg)?;
    let bytes = read(&corpus_path)?;
    let format = cfg.corpus_format()?.unwrap_or(Format::Jsonl);
    let parsed = corpus::parse_tweets(&bytes, format, &ParseOptions { dedup: cfg.dedup()?, stopwords })
        .map_err(|e| PipelineError::Input(format!("{}: {e}", corpus_path.display())))?;
    for e in &parsed.errors {
        log::warn!("{}: skipped {e}", corpus_path.display());
    }
    let table = load_embeddings(cfg)?;
    let scorer = load_scorer(cfg, table.dim())?;

    let mut records = Vec::with_capacity(parsed.corpus.len());
    for rec in parsed.corpus.records {
        let score = match scorer.scorer().score_tokens(&rec.tokens, &table) {
            Ok(s) => Some(s),
            Err(SentimentError::Unscorable) => None,
            Err(e) => return Err(e.into()),
        };
        records.push(ScoredRecord {
            id: rec.id,
            timestamp: rec.timestamp,
            created_at: rec.created_at,
            lang: rec.lang,
            tokens: rec.tokens,
            score,
        });
    }
    let meta = ScoreMeta {
        dedup_dropped: parsed.corpus.dedup_dropped,
        row_errors: parsed.errors.len(),
        model: scorer.info(table.dim()),
    };

    let (records_path, meta_path) = scored_paths(cfg);
    let mut out = Vec::new();
    for r in &records {
        serde_json::to_writer(&mut out, r).expect("record serializes");
        out.write_all(b"\n").expect("in-memory write");
    }
    write(&records_path, &out)?;
    write(&meta_path, format!("{}\n", serde_json::to_string_pretty(&meta).expect("meta serializes")).as_bytes())?;
    Ok(Scored { records, meta })
}

fn load_scored(cfg: &PipelineConfig) -> Result<Scored, PipelineError> {
    let (records_path, meta_path) = scored_paths(cfg);
    let bytes = read(&records_path)?;
    let mut records = Vec::new();
    for (i, line) in bytes.lines().enumerate() {
        let line = line.map_err(|e| PipelineError::Input(format!("{}: {e}", records_path.display())))?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(
            serde_json::from_str(&line)
                .map_err(|e| PipelineError::Input(format!("{} line {}: {e}", records_path.display(), i + 1)))?,
        );
    }
    let meta = serde_json::from_slice(&read(&meta_path)?)
        .map_err(|e| PipelineError::Input(format!("{}: {e}", meta_path.display())))?;
    Ok(Scored { records, meta })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub report: OutlierReport,
    pub series: ScoreSeries,
    pub csv: String,
    pub svg: String,
}

/// Smoothing, outlier test, regions, terms and day profile over scored records.
pub fn analyze(scored: &Scored, cfg: &PipelineConfig, stopwords: &Stopwords) -> Result<Analysis, PipelineError> {
    let mut lang_counts = BTreeMap::new();
    for r in &scored.records {
        *lang_counts.entry(r.lang.code().to_string()).or_insert(0) += 1;
    }
    let kept: Vec<&ScoredRecord> = scored.records.iter().filter(|r| r.score.is_some()).collect();
    let corpus = CorpusStats {
        total: scored.records.len(),
        scored: kept.len(),
        unscored: scored.records.len() - kept.len(),
        dedup_dropped: scored.meta.dedup_dropped,
        lang_counts,
    };
    if kept.is_empty() {
        return Err(PipelineError::NothingToAnalyze(format!(
            "none of the {} records has an in-vocabulary token",
            corpus.total
        )));
    }

    let points: Vec<ScorePoint> = kept
        .iter()
        .map(|r| ScorePoint { id: r.id.clone(), timestamp: r.timestamp, score: r.score.expect("filtered") })
        .collect();
    let mut series = ScoreSeries::new(points, cfg.window()?);
    let esd_input = if cfg.detrend()? { series.detrended() } else { series.scores() };
    let esd_cfg = cfg.esd()?;
    let result = esd_test(&esd_input, &esd_cfg)?;
    series.outlier_flags = result.flags(series.len());

    let scores = series.scores();
    let mut regions = timeline::segment_regions(&series.outlier_flags, &scores, cfg.gap()?);
    let top_k = cfg.top_k()?;
    let members_of = |r: &timeline::OutlierRegion| -> Vec<crate::corpus::TweetRecord> {
        r.members
            .iter()
            .map(|&i| crate::corpus::TweetRecord {
                id: kept[i].id.clone(),
                text: String::new(),
                timestamp: kept[i].timestamp,
                created_at: kept[i].created_at.clone(),
                lang: kept[i].lang,
                tokens: kept[i].tokens.clone(),
            })
            .collect()
    };
    for r in &mut regions {
        let members = members_of(r);
        r.top_terms = timeline::term_frequencies(&members, stopwords, Some(top_k));
    }

    let report = OutlierReport {
        schema_version: SCHEMA_VERSION,
        generated_at: if cfg.fixed_clock()? {
            "1970-01-01T00:00:00Z".to_string()
        } else {
            chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
        },
        model: scored.meta.model.clone(),
        corpus,
        esd: EsdSummary {
            alpha: result.alpha,
            r: result.r(),
            num_outliers: result.num_outliers,
            statistics: result.statistics.clone(),
            lambda: result.critical_values.clone(),
            outlier_ids: result.outlier_indices.iter().map(|&i| series.points[i].id.clone()).collect(),
        },
        regions: regions
            .iter()
            .map(|r| RegionReport {
                start_ts: series.points[r.start].timestamp,
                end_ts: series.points[r.end].timestamp,
                polarity: r.polarity,
                ids: r.members.iter().map(|&i| series.points[i].id.clone()).collect(),
                top_terms: r.top_terms.clone(),
            })
            .collect(),
        day_profile: DayProfileReport::from(&timeline::day_profile(&series.points)),
        config: cfg.values().clone(),
    };
    let csv = scores_csv(&series);
    let title = format!("sentiment timeline: {} of {} records scored", report.corpus.scored, report.corpus.total);
    let svg = timeline_svg(&series, &regions, &title);
    Ok(Analysis { report, series, csv, svg })
}

#[derive(Debug, Clone)]
pub struct ReportPaths {
    pub report: PathBuf,
    pub csv: PathBuf,
    pub svg: PathBuf,
}

fn write_analysis(cfg: &PipelineConfig, a: &Analysis) -> Result<ReportPaths, PipelineError> {
    let dir = cfg.out_dir();
    let paths = ReportPaths { report: dir.join("report.json"), csv: dir.join("scores.csv"), svg: dir.join("timeline.svg") };
    write(&paths.report, a.report.to_json().as_bytes())?;
    write(&paths.csv, a.csv.as_bytes())?;
    write(&paths.svg, a.svg.as_bytes())?;
    Ok(paths)
}

/// Builds the report from a previous `score` run.
pub fn run_report(cfg: &PipelineConfig) -> Result<(Analysis, ReportPaths), PipelineError> {
    let scored = load_scored(cfg)?;
    let analysis = analyze(&scored, cfg, &load_stopwords(cfg)?)?;
    let paths = write_analysis(cfg, &analysis)?;
    Ok((analysis, paths))
}

/// `score` followed by `report`.
pub fn run_analyze(cfg: &PipelineConfig) -> Result<(Analysis, ReportPaths), PipelineError> {
    let scored = run_score(cfg)?;
    let analysis = analyze(&scored, cfg, &load_stopwords(cfg)?)?;
    let paths = write_analysis(cfg, &analysis)?;
    Ok((analysis, paths))
}
