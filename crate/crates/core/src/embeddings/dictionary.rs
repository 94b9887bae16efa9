use std::collections::HashSet;
use std::io::BufRead;

use super::linalg::Matrix;
use super::{EmbeddingError, EmbeddingTable};

/// Seed translation pairs `(source token, target token)`, duplicates removed,
/// first occurrence order kept.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BilingualDictionary {
    pairs: Vec<(String, String)>,
}

impl BilingualDictionary {
    pub fn new<S: Into<String>>(pairs: impl IntoIterator<Item = (S, S)>) -> Self {
        let mut seen = HashSet::new();
        let pairs = pairs
            .into_iter()
            .map(|(a, b)| (a.into(), b.into()))
            .filter(|p| seen.insert(p.clone()))
            .collect();
        BilingualDictionary { pairs }
    }

    /// Two whitespace-separated tokens per line; blank lines are skipped.
    pub fn load<R: BufRead>(reader: R) -> Result<Self, EmbeddingError> {
        let mut pairs = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[..] {
                [] => continue,
                [a, b] => pairs.push((a.to_string(), b.to_string())),
                _ => {
                    return Err(EmbeddingError::Parse {
                        line: i + 1,
                        message: format!("expected two tokens, found {}", fields.len()),
                    })
                }
            }
        }
        Ok(Self::new(pairs))
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Stacks the vectors of every pair whose tokens exist in both tables.
    /// Returns `(X, Y, skipped)` with paired rows in dictionary order.
    pub fn resolve(
        &self,
        source: &EmbeddingTable,
        target: &EmbeddingTable,
    ) -> Result<(Matrix, Matrix, usize), EmbeddingError> {
        if source.dim() != target.dim() {
            return Err(EmbeddingError::DimMismatch(source.dim(), target.dim()));
        }
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (s, t) in &self.pairs {
            if let (Some(x), Some(y)) = (source.lookup(s), target.lookup(t)) {
                xs.push(x.to_vec());
                ys.push(y.to_vec());
            }
        }
        if xs.is_empty() {
            return Err(EmbeddingError::EmptyDictionary);
        }
        let skipped = self.pairs.len() - xs.len();
        Ok((Matrix::from_rows(&xs), Matrix::from_rows(&ys), skipped))
    }
}
