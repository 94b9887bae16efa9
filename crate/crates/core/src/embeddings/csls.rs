//! Cross-domain similarity local scaling.
//!
//! `CSLS(x, y) = 2 cos(x, y) − r_T(y) − r_S(x)`, where `r_T(y)` is the mean
//! cosine between target word `y` and its `k` nearest vectors in the query
//! space, and `r_S(x)` the mean cosine between query `x` and its `k` nearest
//! target words. Targets sitting in dense regions ("hubs") pay a larger
//! penalty than isolated ones.

use std::cmp::Ordering;

use super::linalg::{dot, norm};
use super::{EmbeddingError, EmbeddingTable};

pub const DEFAULT_CSLS_K: usize = 10;

/// Where the neighborhood of a target word is measured.
#[derive(Debug, Clone, Copy)]
pub enum QuerySpace<'a> {
    /// The target table itself, excluding each word's own row.
    SameTable,
    /// A separate set of (already mapped) query vectors.
    Table(&'a EmbeddingTable),
}

/// Precomputed target penalties `r_T` for repeated queries against one table.
///
/// Building the index costs `O(|target| · |query space| · dim)`.
#[derive(Debug, Clone)]
pub struct CslsIndex<'a> {
    target: &'a EmbeddingTable,
    norms: Vec<f64>,
    k: usize,
    penalties: Vec<f64>,
}

impl<'a> CslsIndex<'a> {
    pub fn new(target: &'a EmbeddingTable, space: QuerySpace<'_>, k: usize) -> Result<Self, EmbeddingError> {
        if target.is_empty() {
            return Err(EmbeddingError::EmptyTable);
        }
        if k == 0 {
            return Err(EmbeddingError::BadK);
        }
        let norms: Vec<f64> = target.rows().map(|(_, r)| norm(r)).collect();
        let penalties = match space {
            QuerySpace::SameTable => (0..target.len())
                .map(|i| {
                    let sims = (0..target.len())
                        .filter(|&j| j != i)
                        .map(|j| safe_cos(target.row(i), norms[i], target.row(j), norms[j]));
                    mean_top_k(sims, k)
                })
                .collect(),
            QuerySpace::Table(queries) => {
                if queries.dim() != target.dim() {
                    return Err(EmbeddingError::DimMismatch(queries.dim(), target.dim()));
                }
                let qnorms: Vec<f64> = queries.rows().map(|(_, r)| norm(r)).collect();
                (0..target.len())
                    .map(|i| {
                        let sims = queries
                            .rows()
                            .zip(&qnorms)
                            .map(|((_, q), &qn)| safe_cos(target.row(i), norms[i], q, qn));
                        mean_top_k(sims, k)
                    })
                    .collect()
            }
        };
        Ok(CslsIndex { target, norms, k, penalties })
    }

    /// `r_T` of target row `i`.
    pub fn penalty(&self, i: usize) -> f64 {
        self.penalties[i]
    }

    fn cosines(&self, query: &[f64]) -> Vec<f64> {
        let qn = norm(query);
        (0..self.target.len()).map(|i| safe_cos(query, qn, self.target.row(i), self.norms[i])).collect()
    }

    /// `r_S` of a query vector.
    pub fn query_penalty(&self, query: &[f64]) -> f64 {
        mean_top_k(self.cosines(query).into_iter(), self.k)
    }

    /// All target tokens ranked by CSLS against `query`, best first; ties in
    /// score break by token.
    pub fn neighbors(&self, query: &[f64]) -> Result<Vec<(String, f64)>, EmbeddingError> {
        if query.len() != self.target.dim() {
            return Err(EmbeddingError::DimMismatch(query.len(), self.target.dim()));
        }
        let cos = self.cosines(query);
        let r_s = mean_top_k(cos.iter().copied(), self.k);
        let mut ranked: Vec<(String, f64)> = cos
            .iter()
            .enumerate()
            .map(|(i, &c)| (self.target.token(i).to_string(), 2.0 * c - self.penalties[i] - r_s))
            .collect();
        ranked.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap_or(Ordering::Equal).then_with(|| a.0.cmp(&b.0)));
        Ok(ranked)
    }
}

/// Ranks `table` against `query` using the table itself as the query space.
pub fn csls_neighbors(query: &[f64], table: &EmbeddingTable, k: usize) -> Result<Vec<(String, f64)>, EmbeddingError> {
    CslsIndex::new(table, QuerySpace::SameTable, k)?.neighbors(query)
}

fn safe_cos(a: &[f64], na: f64, b: &[f64], nb: f64) -> f64 {
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot(a, b) / (na * nb)
    }
}

/// Mean of the `k` largest values (fewer if the iterator is shorter; 0 if empty).
fn mean_top_k(values: impl Iterator<Item = f64>, k: usize) -> f64 {
    let mut v: Vec<f64> = values.collect();
    if v.is_empty() {
        return 0.0;
    }
    let k = k.min(v.len());
    v.sort_by(|a, b| b.total_cmp(a));
    v[..k].iter().sum::<f64>() / k as f64
}
