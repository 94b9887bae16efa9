//! Score series smoothing, outlier region segmentation and region summaries.

use std::collections::{BTreeSet, HashMap};

use chrono::{DateTime, Datelike, Weekday};
use serde::{Deserialize, Serialize};

use crate::corpus::{Lang, Stopwords, TweetRecord};

pub const DEFAULT_WINDOW: usize = 25;
pub const DEFAULT_GAP: usize = 5;
pub const DEFAULT_TOP_K: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScorePoint {
    pub id: String,
    pub timestamp: i64,
    pub score: f64,
}

/// Time-ordered scores with their trailing moving average and outlier flags.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScoreSeries {
    pub points: Vec<ScorePoint>,
    pub smoothed: Vec<f64>,
    pub outlier_flags: Vec<bool>,
}

impl ScoreSeries {
    /// Smooths `points` (which must already be time-ordered); flags start
    /// out all false.
    pub fn new(points: Vec<ScorePoint>, window: usize) -> Self {
        let scores: Vec<f64> = points.iter().map(|p| p.score).collect();
        let smoothed = moving_average(&scores, window);
        let outlier_flags = vec![false; points.len()];
        ScoreSeries { points, smoothed, outlier_flags }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn scores(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.score).collect()
    }

    /// Scores minus their moving average.
    pub fn detrended(&self) -> Vec<f64> {
        self.points.iter().zip(&self.smoothed).map(|(p, s)| p.score - s).collect()
    }
}

/// Trailing (causal) moving average, partial at the start:
/// `out[i] = mean(xs[max(0, i+1−window) ..= i])`.
///
/// Uses a running sum with Neumaier compensation, so the cost is linear in
/// the series length regardless of the window. A window of 0 is treated as 1.
pub fn moving_average(xs: &[f64], window: usize) -> Vec<f64> {
    let window = window.max(1);
    let mut sum = 0.0;
    let mut comp = 0.0;
    let add = |sum: &mut f64, comp: &mut f64, v: f64| {
        let t = *sum + v;
        if sum.abs() >= v.abs() {
            *comp += (*sum - t) + v;
        } else {
            *comp += (v - t) + *sum;
        }
        *sum = t;
    };

    let mut out = Vec::with_capacity(xs.len());
    for i in 0..xs.len() {
        add(&mut sum, &mut comp, xs[i]);
        if i >= window {
            add(&mut sum, &mut comp, -xs[i - window]);
        }
        let len = (i + 1).min(window);
        out.push((sum + comp) / len as f64);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutlierRegion {
    /// First and last flagged index covered, inclusive.
    pub start: usize,
    pub end: usize,
    pub polarity: Polarity,
    /// Flagged indices inside the region, ascending.
    pub members: Vec<usize>,
    pub top_terms: Vec<(String, usize)>,
}

impl OutlierRegion {
    pub fn mean_score(&self, scores: &[f64]) -> f64 {
        self.members.iter().map(|&i| scores[i]).sum::<f64>() / self.members.len() as f64
    }
}

fn side(score: f64, global_mean: f64) -> Polarity {
    if score - global_mean >= 0.0 {
        Polarity::Positive
    } else {
        Polarity::Negative
    }
}

/// Groups flagged indices into regions.
///
/// Consecutive flagged indices join the same region when they are at most
/// `gap` positions apart. A region's polarity is the sign of its mean score minus the global mean;
/// a zero difference counts as positive.
pub fn segment_regions(flags: &[bool], scores: &[f64], gap: usize) -> Vec<OutlierRegion> {
    assert_eq!(flags.len(), scores.len(), "flags and scores must align");
    if scores.is_empty() {
        return Vec::new();
    }
    let global_mean = scores.iter().sum::<f64>() / scores.len() as f64;

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in flags.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i) {
        match groups.last_mut() {
            Some(g) if i - g[g.len() - 1] <= gap => g.push(i),
            _ => groups.push(vec![i]),
        }
    }

    groups
        .into_iter()
        .map(|members| {
            let mean = members.iter().map(|&i| scores[i]).sum::<f64>() / members.len() as f64;
            OutlierRegion {
                start: members[0],
                end: members[members.len() - 1],
                polarity: side(mean, global_mean),
                members,
                top_terms: Vec::new(),
            }
        })
        .collect()
}

/// Ranked token counts over `members`, excluding the stopwords of every
/// language present among them. Descending count, ties by token.
pub fn term_frequencies<'a>(
    members: impl IntoIterator<Item = &'a TweetRecord>,
    stopwords: &Stopwords,
    top_k: Option<usize>,
) -> Vec<(String, usize)> {
    let members: Vec<&TweetRecord> = members.into_iter().collect();
    let langs: BTreeSet<Lang> = members.iter().map(|r| r.lang).collect();

    let mut counts: HashMap<&str, usize> = HashMap::new();
    for rec in &members {
        for tok in &rec.tokens {
            if langs.iter().any(|&l| stopwords.contains(l, tok)) {
                continue;
            }
            *counts.entry(tok.as_str()).or_default() += 1;
        }
    }
    let mut ranked: Vec<(String, usize)> = counts.into_iter().map(|(t, c)| (t.to_string(), c)).collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    if let Some(k) = top_k {
        ranked.truncate(k);
    }
    ranked
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DayStats {
    pub count: usize,
    pub mean: Option<f64>,
}

/// Count and mean score per UTC weekday, Monday first.
#[derive(Debug, Clone, PartialEq)]
pub struct DayProfile {
    pub days: [DayStats; 7],
}

impl DayProfile {
    pub const LABELS: [&'static str; 7] = ["Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"];

    pub fn get(&self, day: Weekday) -> DayStats {
        self.days[day.num_days_from_monday() as usize]
    }
}

pub fn day_profile(points: &[ScorePoint]) -> DayProfile {
    let mut sums = [0.0f64; 7];
    let mut counts = [0usize; 7];
    for p in points {
        let day = DateTime::from_timestamp(p.timestamp, 0).unwrap_or_default().weekday();
        let i = day.num_days_from_monday() as usize;
        sums[i] += p.score;
        counts[i] += 1;
    }
    let mut days = [DayStats { count: 0, mean: None }; 7];
    for i in 0..7 {
        days[i] = DayStats { count: counts[i], mean: (counts[i] > 0).then(|| sums[i] / counts[i] as f64) };
    }
    DayProfile { days }
}
