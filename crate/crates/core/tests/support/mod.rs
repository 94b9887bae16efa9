//! Synthetic fixtures shared by the integration tests: a three-language
//! vocabulary in one aligned space, labeled training text, and a time-ordered
//! corpus with injected sentiment bursts.

#![allow(dead_code)]

pub mod t_table;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub const DIM: usize = 8;
pub const LANGS: [&str; 3] = ["en", "de", "es"];

const POSITIVE: [[&str; 6]; 3] = [
    ["good", "great", "love", "wonderful", "happy", "brilliant"],
    ["gut", "toll", "liebe", "wunderbar", "schön", "großartig"],
    ["bueno", "genial", "amor", "maravilloso", "feliz", "brillante"],
];
const NEGATIVE: [[&str; 6]; 3] = [
    ["bad", "awful", "hate", "boring", "sad", "terrible"],
    ["schlecht", "furchtbar", "hass", "langweilig", "traurig", "schrecklich"],
    ["malo", "horrible", "odio", "aburrido", "triste", "pésimo"],
];
const NEUTRAL: [[&str; 8]; 3] = [
    ["movie", "cinema", "premiere", "tonight", "ticket", "actor", "screen", "queue"],
    ["kino", "vorstellung", "heute", "karte", "schauspieler", "leinwand", "abend", "saal"],
    ["pelicula", "cine", "estreno", "noche", "entrada", "actriz", "pantalla", "sala"],
];
/// Shared by every language, like names and hashtags.
const SHARED: [&str; 3] = ["berlin", "film", "berlinale"];
/// Function words per language; they have no embedding.
const FILLER: [[&str; 3]; 3] = [["the", "and", "is"], ["der", "und", "ist"], ["el", "y", "es"]];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mood {
    Positive,
    Negative,
    Neutral,
}

/// One embedding file per language; sentiment lives on the first axis.
pub fn embedding_files(rng: &mut ChaCha8Rng) -> [String; 3] {
    let noise = Normal::new(0.0, 0.08).unwrap();
    let mut out: [String; 3] = Default::default();
    for (l, file) in out.iter_mut().enumerate() {
        let mut rows: Vec<(String, Vec<f64>)> = Vec::new();
        for (words, sign) in [(&POSITIVE[l][..], 1.0), (&NEGATIVE[l][..], -1.0)] {
            for w in words {
                let mut v: Vec<f64> = (0..DIM).map(|_| noise.sample(rng)).collect();
                v[0] = sign * rng.gen_range(2.0..3.0);
                rows.push((w.to_string(), v));
            }
        }
        let neutral = NEUTRAL[l].iter().chain(if l == 0 { &SHARED[..] } else { &[][..] });
        for w in neutral {
            let mut v: Vec<f64> = (0..DIM).map(|_| rng.gen_range(-0.6..0.6)).collect();
            v[0] = noise.sample(rng) * 0.5;
            rows.push((w.to_string(), v));
        }
        let _ = writeln!(file, "{} {DIM}", rows.len());
        for (w, v) in rows {
            let _ = write!(file, "{w}");
            for x in v {
                let _ = write!(file, " {x}");
            }
            file.push('\n');
        }
    }
    out
}

/// A short text in language `l` with the given mood.
pub fn sentence(rng: &mut ChaCha8Rng, l: usize, mood: Mood) -> String {
    sentence_with(rng, l, mood, 1)
}

/// Like [`sentence`], with at least `min_sent` sentiment words when polar.
pub fn sentence_with(rng: &mut ChaCha8Rng, l: usize, mood: Mood, min_sent: usize) -> String {
    let mut words: Vec<&str> = Vec::new();
    let (n_sent, n_neutral) = match mood {
        Mood::Neutral => (0, rng.gen_range(2..6)),
        _ => (rng.gen_range(min_sent..min_sent.max(3) + 1), rng.gen_range(0..3)),
    };
    for _ in 0..n_sent {
        let pool = if mood == Mood::Positive { &POSITIVE[l] } else { &NEGATIVE[l] };
        words.push(pool.choose(rng).unwrap());
    }
    for _ in 0..n_neutral {
        if rng.gen_bool(0.3) {
            words.push(SHARED.choose(rng).unwrap());
        } else {
            words.push(NEUTRAL[l].choose(rng).unwrap());
        }
    }
    for _ in 0..rng.gen_range(0..3) {
        words.push(FILLER[l].choose(rng).unwrap());
    }
    words.shuffle(rng);
    words.join(" ")
}

/// Balanced labeled examples across the three languages, as JSONL.
pub fn training_jsonl(rng: &mut ChaCha8Rng, n: usize) -> String {
    let mut s = String::new();
    for i in 0..n {
        let label = i % 2;
        let mood = if label == 1 { Mood::Positive } else { Mood::Negative };
        let l = rng.gen_range(0..3);
        let text = sentence(rng, l, mood);
        let _ = writeln!(s, "{}", serde_json::json!({ "text": text, "label": label }));
    }
    s
}

pub struct Corpus {
    pub jsonl: String,
    /// Record ids inside each injected burst.
    pub positive_burst: Vec<String>,
    pub negative_burst: Vec<String>,
    pub len: usize,
}

/// `n` neutral records in time order, plus a positive burst starting at
/// `pos_at` and a negative burst at `neg_at`, each `burst` records long.
/// Burst records are emphatic: two or more sentiment words each.
/// A few records have no usable tokens at all.
pub fn corpus_jsonl(rng: &mut ChaCha8Rng, n: usize, burst: usize, pos_at: usize, neg_at: usize) -> Corpus {
    let start = 1_549_526_400i64; // 2019-02-07T08:00:00Z
    let mut ts = start;
    let mut s = String::new();
    let mut positive_burst = Vec::new();
    let mut negative_burst = Vec::new();
    for i in 0..n {
        ts += rng.gen_range(30..300);
        let l = rng.gen_range(0..3);
        let id = format!("{}", 1_000_000 + i);
        let mood = if (pos_at..pos_at + burst).contains(&i) {
            positive_burst.push(id.clone());
            Mood::Positive
        } else if (neg_at..neg_at + burst).contains(&i) {
            negative_burst.push(id.clone());
            Mood::Negative
        } else {
            Mood::Neutral
        };
        // the mention keeps texts distinct without adding tokens
        let text = if i % 397 == 5 {
            format!("@fan{i} http://t.co/x{i}")
        } else {
            format!("@fan{i} {}", sentence_with(rng, l, mood, 2))
        };
        let created_at = chrono::DateTime::from_timestamp(ts, 0).unwrap().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
        let _ = writeln!(
            s,
            "{}",
            serde_json::json!({ "id": id, "text": text, "created_at": created_at, "lang": LANGS[l] })
        );
    }
    Corpus { jsonl: s, positive_burst, negative_burst, len: n }
}

/// Paths of a complete on-disk fixture.
pub struct Fixture {
    pub dir: PathBuf,
    pub embeddings: Vec<PathBuf>,
    pub train: PathBuf,
    pub corpus: PathBuf,
    pub burst: Corpus,
}

impl Fixture {
    pub fn embeddings_arg(&self) -> String {
        self.embeddings.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(",")
    }
}

pub fn write_fixture(dir: &Path, seed: u64, n: usize, burst: usize) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let files = embedding_files(&mut rng);
    let embeddings: Vec<PathBuf> = LANGS
        .iter()
        .zip(&files)
        .map(|(l, text)| {
            let p = dir.join(format!("{l}.vec"));
            std::fs::write(&p, text).unwrap();
            p
        })
        .collect();
    let train = dir.join("train.jsonl");
    std::fs::write(&train, training_jsonl(&mut rng, 1200)).unwrap();
    let pos_at = n * 3 / 10;
    let neg_at = n * 7 / 10;
    let corpus_data = corpus_jsonl(&mut rng, n, burst, pos_at, neg_at);
    let corpus = dir.join("corpus.jsonl");
    std::fs::write(&corpus, &corpus_data.jsonl).unwrap();
    Fixture { dir: dir.to_path_buf(), embeddings, train, corpus, burst: corpus_data }
}

/// Small model settings used throughout the tests.
pub const MODEL_FLAGS: [&str; 4] = ["--hidden-dim", "8", "--layers", "2"];

pub fn sentiscope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sentiscope")).args(args).output().expect("binary runs")
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Trains the small model on the fixture; returns the weight path.
pub fn train(fx: &Fixture, out: &Path, seed: &str) -> PathBuf {
    let emb = fx.embeddings_arg();
    let mut args = vec![
        "train",
        "--train-data",
        fx.train.to_str().unwrap(),
        "--embeddings",
        &emb,
        "--out-dir",
        out.to_str().unwrap(),
        "--seed",
        seed,
    ];
    args.extend(MODEL_FLAGS);
    let o = sentiscope(&args);
    assert!(o.status.success(), "train failed: {}", stderr(&o));
    out.join("weights.mlsw")
}

pub fn analyze(fx: &Fixture, weights: &Path, out: &Path, extra: &[&str]) -> Output {
    let emb = fx.embeddings_arg();
    let mut args = vec![
        "analyze",
        "--corpus",
        fx.corpus.to_str().unwrap(),
        "--embeddings",
        &emb,
        "--weights",
        weights.to_str().unwrap(),
        "--out-dir",
        out.to_str().unwrap(),
        "--fixed-clock",
        "true",
    ];
    args.extend(extra);
    sentiscope(&args)
}
