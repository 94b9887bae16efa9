use std::io::{Read, Write};

use super::weights::{read_tensors, write_tensors, TensorSet};
use super::{embed_tokens, lstm::dot, sigmoid, SentimentError};
use crate::embeddings::EmbeddingTable;

/// Logistic regression on the mean embedding; a sanity baseline for the LSTM.
#[derive(Debug, Clone, PartialEq)]
pub struct BaselineModel {
    pub w: Vec<f64>,
    pub b: f64,
}

impl BaselineModel {
    pub fn zeros(dim: usize) -> Self {
        BaselineModel { w: vec![0.0; dim], b: 0.0 }
    }

    pub fn save<W: Write>(&self, w: W) -> Result<(), SentimentError> {
        write_tensors(
            w,
            &[
                ("head.W".to_string(), vec![1, self.w.len()], &self.w[..]),
                ("head.b".to_string(), vec![1], std::slice::from_ref(&self.b)),
            ],
        )
    }

    pub fn load<R: Read>(r: R, dim: usize) -> Result<Self, SentimentError> {
        let mut set = TensorSet::new(read_tensors(r)?)?;
        let w = set.take("head.W", &[1, dim])?;
        let b = set.take("head.b", &[1])?[0];
        set.finish()?;
        Ok(BaselineModel { w, b })
    }
}

/// `σ(w · mean(embeddings) + b)` over the in-vocabulary tokens.
pub fn baseline_score<S: AsRef<str>>(
    tokens: &[S],
    table: &EmbeddingTable,
    model: &BaselineModel,
) -> Result<f64, SentimentError> {
    if model.w.len() != table.dim() {
        return Err(SentimentError::Shape(format!(
            "baseline weights have {} entries, embeddings have dimension {}",
            model.w.len(),
            table.dim()
        )));
    }
    let (seq, t) = embed_tokens(tokens, table);
    if t == 0 {
        return Err(SentimentError::Unscorable);
    }
    let d = table.dim();
    let mut mean = vec![0.0; d];
    for row in seq.chunks_exact(d) {
        mean.iter_mut().zip(row).for_each(|(m, v)| *m += v);
    }
    mean.iter_mut().for_each(|m| *m /= t as f64);
    Ok(sigmoid(dot(&model.w, &mean) + model.b))
}
