use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{bce_loss, embed_tokens, LstmModel, ModelConfig, SentimentError};
use crate::embeddings::EmbeddingTable;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    /// Global L2 norm above which a batch gradient is rescaled.
    pub clip_norm: f64,
    pub seed: u64,
    /// Train / validation / test fractions.
    pub split: [f64; 3],
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig { epochs: 4, learning_rate: 0.1, batch_size: 16, clip_norm: 5.0, seed: 0, split: [0.8, 0.1, 0.1] }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<(), SentimentError> {
        let bad = |m: String| Err(SentimentError::Config(m));
        if self.epochs == 0 {
            return bad("epochs must be at least 1".into());
        }
        // lr = 0 is allowed: it leaves the weights untouched
        if !(self.learning_rate >= 0.0 && self.learning_rate.is_finite()) {
            return bad(format!("learning rate must be non-negative, got {}", self.learning_rate));
        }
        if self.batch_size == 0 {
            return bad("batch size must be at least 1".into());
        }
        if !(self.clip_norm > 0.0) {
            return bad(format!("clip norm must be positive, got {}", self.clip_norm));
        }
        if self.split.iter().any(|f| !(0.0..=1.0).contains(f)) || (self.split.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return bad(format!("split fractions must be in [0, 1] and sum to 1, got {:?}", self.split));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledExample {
    pub tokens: Vec<String>,
    /// 0 = negative, 1 = positive.
    pub label: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochMetrics {
    pub epoch: usize,
    pub train_loss: f64,
    pub train_accuracy: f64,
    pub valid_loss: Option<f64>,
    pub valid_accuracy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainReport {
    pub epochs: Vec<EpochMetrics>,
    pub test_loss: Option<f64>,
    pub test_accuracy: Option<f64>,
    pub train_size: usize,
    pub valid_size: usize,
    pub test_size: usize,
    /// Examples dropped because none of their tokens has an embedding.
    pub unscorable: usize,
}

/// Shuffles `0..n` and cuts it into train / validation / test index lists.
pub fn split_indices<R: Rng>(n: usize, split: [f64; 3], rng: &mut R) -> [Vec<usize>; 3] {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let n_train = ((n as f64 * split[0]).round() as usize).min(n);
    let n_valid = ((n as f64 * split[1]).round() as usize).min(n - n_train);
    let test = idx.split_off(n_train + n_valid);
    let valid = idx.split_off(n_train);
    [idx, valid, test]
}

/// Initializes a model from `cfg.seed` and fits it to `data`.
pub fn train(
    config: ModelConfig,
    data: &[LabeledExample],
    table: &EmbeddingTable,
    cfg: &TrainConfig,
) -> Result<(LstmModel, TrainReport), SentimentError> {
    cfg.validate()?;
    if table.dim() != config.embed_dim {
        return Err(SentimentError::Shape(format!(
            "embeddings have dimension {}, model expects {}",
            table.dim(),
            config.embed_dim
        )));
    }
    let mut embedded = Vec::with_capacity(data.len());
    let mut unscorable = 0;
    for ex in data {
        if ex.label > 1 {
            return Err(SentimentError::BadLabel(ex.label));
        }
        let (seq, t) = embed_tokens(&ex.tokens, table);
        if t == 0 {
            unscorable += 1;
        } else {
            embedded.push((seq, ex.label));
        }
    }
    check_labels(&embedded)?;
    let mut model = LstmModel::init(config, &mut ChaCha8Rng::seed_from_u64(cfg.seed))?;
    let mut report = fit(&mut model, &embedded, cfg)?;
    report.unscorable = unscorable;
    Ok((model, report))
}

fn check_labels(data: &[(Vec<f64>, u8)]) -> Result<(), SentimentError> {
    if data.is_empty() {
        return Err(SentimentError::EmptyDataset);
    }
    if let Some(&(_, bad)) = data.iter().find(|(_, y)| *y > 1) {
        return Err(SentimentError::BadLabel(bad));
    }
    if data.iter().all(|(_, y)| *y == data[0].1) {
        return Err(SentimentError::DegenerateLabels);
    }
    Ok(())
}

/// Plain mini-batch SGD with global-norm clipping on pre-embedded sequences.
///
/// Shuffling draws from a stream of `cfg.seed` separate from the one used
/// for initialization, so the run is fully determined by the seed.
pub fn fit(model: &mut LstmModel, data: &[(Vec<f64>, u8)], cfg: &TrainConfig) -> Result<TrainReport, SentimentError> {
    cfg.validate()?;
    check_labels(data)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(1);
    let [mut train_idx, valid_idx, test_idx] = split_indices(data.len(), cfg.split, &mut rng);
    if train_idx.is_empty() {
        return Err(SentimentError::EmptyDataset);
    }

    let mut epochs = Vec::with_capacity(cfg.epochs);
    for epoch in 1..=cfg.epochs {
        train_idx.shuffle(&mut rng);
        for chunk in train_idx.chunks(cfg.batch_size) {
            let batch: Vec<(&[f64], u8)> = chunk.iter().map(|&i| (&data[i].0[..], data[i].1)).collect();
            let (_, grads) = model.batch_gradient(&batch)?;
            sgd_step(model, &grads, cfg.learning_rate, cfg.clip_norm);
        }
        let (train_loss, train_accuracy) = evaluate(model, data, &train_idx)?.expect("train split is non-empty");
        let valid = evaluate(model, data, &valid_idx)?;
        log::info!("epoch {epoch}: train loss {train_loss:.4} acc {train_accuracy:.4}");
        epochs.push(EpochMetrics {
            epoch,
            train_loss,
            train_accuracy,
            valid_loss: valid.map(|v| v.0),
            valid_accuracy: valid.map(|v| v.1),
        });
    }
    let test = evaluate(model, data, &test_idx)?;
    Ok(TrainReport {
        epochs,
        test_loss: test.map(|t| t.0),
        test_accuracy: test.map(|t| t.1),
        train_size: train_idx.len(),
        valid_size: valid_idx.len(),
        test_size: test_idx.len(),
        unscorable: 0,
    })
}

fn sgd_step(model: &mut LstmModel, grads: &LstmModel, lr: f64, clip: f64) {
    let sq: f64 = grads.tensors().iter().flat_map(|t| t.2.iter()).map(|g| g * g).sum();
    let norm = sq.sqrt();
    let scale = if norm > clip { clip / norm } else { 1.0 };
    for ((_, p), (_, _, g)) in model.tensors_mut().into_iter().zip(grads.tensors()) {
        for (pi, gi) in p.iter_mut().zip(g) {
            *pi -= lr * scale * gi;
        }
    }
}

/// Mean loss and accuracy (score ≥ 0.5 predicts positive) over `idx`.
fn evaluate(model: &LstmModel, data: &[(Vec<f64>, u8)], idx: &[usize]) -> Result<Option<(f64, f64)>, SentimentError> {
    if idx.is_empty() {
        return Ok(None);
    }
    let mut loss = 0.0;
    let mut correct = 0;
    for &i in idx {
        let (seq, y) = (&data[i].0, data[i].1);
        let s = model.forward(seq)?;
        loss += bce_loss(s, y);
        if u8::from(s >= 0.5) == y {
            correct += 1;
        }
    }
    let n = idx.len() as f64;
    Ok(Some((loss / n, correct as f64 / n)))
}
