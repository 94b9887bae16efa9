//! Sentiment scoring: a stacked bidirectional LSTM over fixed cross-lingual
//! embeddings, average-pooled over time and squashed by a sigmoid head.

mod baseline;
mod lstm;
mod train;
mod weights;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embeddings::EmbeddingTable;

pub use baseline::{baseline_score, BaselineModel};
pub use lstm::{lstm_cell_forward, DirectionWeights, ForwardCache, LstmLayerWeights, LstmModel};
pub use train::{fit, split_indices, train, EpochMetrics, LabeledExample, TrainConfig, TrainReport};
pub use weights::{read_tensors, write_tensors, NamedTensor};

#[derive(Debug, Error)]
pub enum SentimentError {
    #[error("unscorable: empty token sequence")]
    Unscorable,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("degenerate labels: training data must contain both classes")]
    DegenerateLabels,
    #[error("empty dataset: no scorable training examples")]
    EmptyDataset,
    #[error("invalid label {0}: labels must be 0 or 1")]
    BadLabel(u8),
    #[error("weight file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub embed_dim: usize,
    pub hidden_dim: usize,
    pub layers: usize,
    pub bidirectional: bool,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig { embed_dim: 300, hidden_dim: 300, layers: 2, bidirectional: true }
    }
}

impl ModelConfig {
    pub fn directions(&self) -> usize {
        if self.bidirectional {
            2
        } else {
            1
        }
    }

    /// Width of each layer's per-step output (and of the pooled vector).
    pub fn output_dim(&self) -> usize {
        self.directions() * self.hidden_dim
    }

    pub fn layer_input_dim(&self, layer: usize) -> usize {
        if layer == 0 {
            self.embed_dim
        } else {
            self.output_dim()
        }
    }

    pub fn validate(&self) -> Result<(), SentimentError> {
        if self.embed_dim == 0 || self.hidden_dim == 0 || self.layers == 0 {
            return Err(SentimentError::Config(format!(
                "dimensions must be positive (embed_dim={}, hidden_dim={}, layers={})",
                self.embed_dim, self.hidden_dim, self.layers
            )));
        }
        Ok(())
    }
}

pub const PROB_CLAMP: f64 = 1e-7;

/// Binary cross-entropy with the score clamped to `[1e-7, 1 − 1e-7]`.
pub fn bce_loss(score: f64, label: u8) -> f64 {
    let s = score.clamp(PROB_CLAMP, 1.0 - PROB_CLAMP);
    if label == 1 {
        -s.ln()
    } else {
        -(1.0 - s).ln()
    }
}

pub(crate) fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Looks up each token and concatenates the in-vocabulary vectors into a
/// `T × dim` row-major buffer. Out-of-vocabulary tokens are skipped.
pub fn embed_tokens<S: AsRef<str>>(tokens: &[S], table: &EmbeddingTable) -> (Vec<f64>, usize) {
    let mut seq = Vec::with_capacity(tokens.len() * table.dim());
    let mut t = 0;
    for tok in tokens {
        if let Some(v) = table.lookup(tok.as_ref()) {
            seq.extend_from_slice(v);
            t += 1;
        }
    }
    (seq, t)
}

/// Anything that maps a token sequence to a score in (0, 1).
pub trait Scorer {
    fn score_tokens(&self, tokens: &[String], table: &EmbeddingTable) -> Result<f64, SentimentError>;
}

impl Scorer for LstmModel {
    fn score_tokens(&self, tokens: &[String], table: &EmbeddingTable) -> Result<f64, SentimentError> {
        let (seq, _) = embed_tokens(tokens, table);
        self.forward(&seq)
    }
}

impl Scorer for BaselineModel {
    fn score_tokens(&self, tokens: &[String], table: &EmbeddingTable) -> Result<f64, SentimentError> {
        baseline_score(tokens, table, self)
    }
}
