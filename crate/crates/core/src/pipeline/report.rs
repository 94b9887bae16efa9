//! Report artifacts: the JSON outlier report, the per-point scores CSV and
//! the SVG timeline.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::corpus::Lang;
use crate::timeline::{DayProfile, DayStats, OutlierRegion, Polarity, ScoreSeries};

pub const SCHEMA_VERSION: u32 = 1;

/// One corpus record after scoring; the line format of `scored.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredRecord {
    pub id: String,
    pub timestamp: i64,
    pub created_at: String,
    pub lang: Lang,
    pub tokens: Vec<String>,
    /// `None` when no token has an embedding.
    pub score: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelInfo {
    pub scorer: String,
    pub version: String,
    pub embed_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hidden_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bidirectional: Option<bool>,
}

/// Side information written next to `scored.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreMeta {
    pub dedup_dropped: usize,
    pub row_errors: usize,
    pub model: ModelInfo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub total: usize,
    pub scored: usize,
    pub unscored: usize,
    pub dedup_dropped: usize,
    pub lang_counts: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EsdSummary {
    pub alpha: f64,
    pub r: usize,
    pub num_outliers: usize,
    #[serde(rename = "R")]
    pub statistics: Vec<f64>,
    pub lambda: Vec<f64>,
    pub outlier_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionReport {
    pub start_ts: i64,
    pub end_ts: i64,
    pub polarity: Polarity,
    pub ids: Vec<String>,
    pub top_terms: Vec<(String, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct DayProfileReport {
    pub Mon: DayStats,
    pub Tue: DayStats,
    pub Wed: DayStats,
    pub Thu: DayStats,
    pub Fri: DayStats,
    pub Sat: DayStats,
    pub Sun: DayStats,
}

impl From<&DayProfile> for DayProfileReport {
    fn from(p: &DayProfile) -> Self {
        let d = p.days;
        DayProfileReport { Mon: d[0], Tue: d[1], Wed: d[2], Thu: d[3], Fri: d[4], Sat: d[5], Sun: d[6] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutlierReport {
    pub schema_version: u32,
    pub generated_at: String,
    pub model: ModelInfo,
    pub corpus: CorpusStats,
    pub esd: EsdSummary,
    pub regions: Vec<RegionReport>,
    pub day_profile: DayProfileReport,
    pub config: BTreeMap<String, String>,
}

impl OutlierReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

pub const SCORES_CSV_HEADER: [&str; 5] = ["id", "timestamp", "score", "smoothed", "outlier"];

pub fn scores_csv(series: &ScoreSeries) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SCORES_CSV_HEADER).expect("in-memory write");
    for (i, p) in series.points.iter().enumerate() {
        w.write_record([
            p.id.clone(),
            p.timestamp.to_string(),
            p.score.to_string(),
            series.smoothed[i].to_string(),
            series.outlier_flags[i].to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

const WIDTH: f64 = 1200.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 40.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Scatter of every scored point in time order (outliers in red), the moving
/// average as a green line, and shaded outlier regions.
pub fn timeline_svg(series: &ScoreSeries, regions: &[OutlierRegion], title: &str) -> String {
    let n = series.len();
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x = |i: usize| if n > 1 { LEFT + plot_w * i as f64 / (n - 1) as f64 } else { LEFT + plot_w / 2.0 };
    let y = |v: f64| TOP + plot_h * (1.0 - v.clamp(0.0, 1.0));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, "  <title>{}</title>", escape(title));
    let _ = writeln!(s, r#"  <rect class="background" x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    for r in regions {
        let (x0, x1) = (x(r.start) - 2.0, x(r.end) + 2.0);
        let fill = match r.polarity {
            Polarity::Positive => "#f4c7c3",
            Polarity::Negative => "#c3d3f4",
        };
        let _ = writeln!(
            s,
            r#"  <rect class="region {}" x="{x0:.2}" y="{TOP}" width="{:.2}" height="{plot_h}" fill="{fill}" fill-opacity="0.5"/>"#,
            polarity_name(r.polarity),
            x1 - x0
        );
    }

    // axes and gridlines
    let _ = writeln!(
        s,
        r##"  <path class="axis" d="M{LEFT} {TOP} L{LEFT} {:.2} L{:.2} {:.2}" stroke="#333" fill="none"/>"##,
        TOP + plot_h,
        LEFT + plot_w,
        TOP + plot_h
    );
    for v in [0.0, 0.5, 1.0] {
        let yy = y(v);
        let _ = writeln!(
            s,
            r##"  <line class="grid" x1="{LEFT}" y1="{yy:.2}" x2="{:.2}" y2="{yy:.2}" stroke="#ddd"/>"##,
            LEFT + plot_w
        );
        let _ = writeln!(s, r#"  <text x="{:.2}" y="{:.2}" text-anchor="end">{v}</text>"#, LEFT - 6.0, yy + 4.0);
    }
    let _ = writeln!(
        s,
        r#"  <text x="{:.2}" y="{:.2}" text-anchor="middle">tweets in time order (n = {n})</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 10.0
    );

    let _ = writeln!(s, r#"  <g class="points">"#);
    for (i, p) in series.points.iter().enumerate() {
        let (class, fill) = if series.outlier_flags[i] { ("outlier", "red") } else { ("point", "#4c72b0") };
        let _ = writeln!(
            s,
            r#"    <circle class="{class}" cx="{:.2}" cy="{:.2}" r="2" fill="{fill}"><title>{}</title></circle>"#,
            x(i),
            y(p.score),
            escape(&p.id)
        );
    }
    let _ = writeln!(s, "  </g>");

    if n > 0 {
        let mut d = String::new();
        for (i, v) in series.smoothed.iter().enumerate() {
            let _ = write!(d, "{}{:.2} {:.2}", if i == 0 { "M" } else { " L" }, x(i), y(*v));
        }
        let _ = writeln!(s, r#"  <path class="midline" d="{d}" stroke="green" stroke-width="2" fill="none"/>"#);
    }

    // legend: swatches are rects so that circles are only data points
    let entries = [("#4c72b0", "score"), ("red", "outlier"), ("green", "moving average")];
    for (k, (color, label)) in entries.iter().enumerate() {
        let lx = LEFT + 10.0 + 130.0 * k as f64;
        let _ = writeln!(
            s,
            r#"  <rect class="legend" x="{lx:.2}" y="14" width="10" height="10" fill="{color}"/><text x="{:.2}" y="23">{label}</text>"#,
            lx + 14.0
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn polarity_name(p: Polarity) -> &'static str {
    match p {
        Polarity::Positive => "positive",
        Polarity::Negative => "negative",
    }
}
