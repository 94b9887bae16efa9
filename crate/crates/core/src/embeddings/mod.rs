//! Word-vector tables, orthogonal cross-lingual alignment and CSLS retrieval.

mod csls;
mod dictionary;
pub mod linalg;
mod procrustes;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::BufRead;

use thiserror::Error;

pub use csls::{csls_neighbors, CslsIndex, QuerySpace, DEFAULT_CSLS_K};
pub use dictionary::BilingualDictionary;
pub use linalg::{svd, Matrix, Svd};
pub use procrustes::{procrustes_align, OrthogonalMap};

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: expected {expected} values, found {found}")]
    Dimension { line: usize, expected: usize, found: usize },
    #[error("duplicate token {0:?}")]
    DuplicateToken(String),
    #[error("header announces {expected} rows but the file has {found}")]
    RowCount { expected: usize, found: usize },
    #[error("zero vector for token {0:?} cannot be normalized")]
    ZeroRow(String),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("empty embedding table")]
    EmptyTable,
    #[error("dictionary has no usable pairs")]
    EmptyDictionary,
    #[error("dictionary spans nothing (cross-covariance has rank 0)")]
    Degenerate,
    #[error("neighborhood size k must be at least 1")]
    BadK,
}

/// Vocabulary mapped to fixed-width real vectors, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    dim: usize,
    tokens: Vec<String>,
    vocab: HashMap<String, usize>,
    data: Vec<f64>,
}

impl EmbeddingTable {
    pub fn new(dim: usize) -> Self {
        EmbeddingTable { dim, tokens: Vec::new(), vocab: HashMap::new(), data: Vec::new() }
    }

    /// Builds a table from `(token, vector)` pairs.
    pub fn from_rows<S, V>(dim: usize, rows: impl IntoIterator<Item = (S, V)>) -> Result<Self, EmbeddingError>
    where
        S: Into<String>,
        V: AsRef<[f64]>,
    {
        let mut table = Self::new(dim);
        for (i, (token, vector)) in rows.into_iter().enumerate() {
            let vector = vector.as_ref();
            if vector.len() != dim {
                return Err(EmbeddingError::Dimension { line: i + 1, expected: dim, found: vector.len() });
            }
            table.push(token.into(), vector)?;
        }
        Ok(table)
    }

    fn push(&mut self, token: String, vector: &[f64]) -> Result<(), EmbeddingError> {
        if self.vocab.contains_key(&token) {
            return Err(EmbeddingError::DuplicateToken(token));
        }
        self.vocab.insert(token.clone(), self.tokens.len());
        self.tokens.push(token);
        self.data.extend_from_slice(vector);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn token(&self, index: usize) -> &str {
        &self.tokens[index]
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.vocab.get(token).copied()
    }

    pub fn row(&self, index: usize) -> &[f64] {
        &self.data[index * self.dim..(index + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.tokens.iter().map(String::as_str).zip(self.data.chunks_exact(self.dim.max(1)))
    }

    /// Exact match on the lowercased token. `None` means out of vocabulary.
    pub fn lookup(&self, token: &str) -> Option<&[f64]> {
        let idx = if token.chars().any(char::is_uppercase) {
            self.vocab.get(&token.to_lowercase())
        } else {
            self.vocab.get(token)
        };
        idx.map(|&i| self.row(i))
    }

    /// Scales every row to unit L2 norm. Zero rows are an error.
    pub fn normalize_rows(&mut self) -> Result<(), EmbeddingError> {
        let dim = self.dim;
        for (i, row) in self.data.chunks_exact_mut(dim.max(1)).enumerate() {
            let n = linalg::norm(row);
            if n == 0.0 || !n.is_finite() {
                return Err(EmbeddingError::ZeroRow(self.tokens[i].clone()));
            }
            row.iter_mut().for_each(|x| *x /= n);
        }
        Ok(())
    }

    pub fn normalized(mut self) -> Result<Self, EmbeddingError> {
        self.normalize_rows()?;
        Ok(self)
    }

    /// Unions several tables of equal dimension. On a token collision the
    /// earlier table wins; the number of shadowed rows is returned.
    pub fn merge(tables: &[EmbeddingTable]) -> Result<(EmbeddingTable, usize), EmbeddingError> {
        let dim = tables.first().ok_or(EmbeddingError::EmptyTable)?.dim;
        let mut merged = Self::new(dim);
        let mut shadowed = 0;
        for t in tables {
            if t.dim != dim {
                return Err(EmbeddingError::DimMismatch(dim, t.dim));
            }
            for (token, row) in t.rows() {
                if merged.vocab.contains_key(token) {
                    shadowed += 1;
                } else {
                    merged.push(token.to_string(), row)?;
                }
            }
        }
        Ok((merged, shadowed))
    }

    /// Applies `f` to every row, producing a new table with the same vocabulary.
    pub fn map_rows(&self, out_dim: usize, mut f: impl FnMut(&[f64]) -> Vec<f64>) -> EmbeddingTable {
        let mut data = Vec::with_capacity(self.len() * out_dim);
        for (_, row) in self.rows() {
            let mapped = f(row);
            assert_eq!(mapped.len(), out_dim);
            data.extend(mapped);
        }
        EmbeddingTable { dim: out_dim, tokens: self.tokens.clone(), vocab: self.vocab.clone(), data }
    }

    /// Renders the table in the text vector format with an `N D` header.
    /// Floats use the shortest representation that parses back exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.len(), self.dim);
        for (token, row) in self.rows() {
            out.push_str(token);
            for v in row {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }
}

/// Reads the whitespace-separated text vector format.
///
/// The first line is an `N D` header if it consists of exactly two integers;
/// otherwise the file is headerless and the dimension comes from the first row.
pub fn load_embeddings<R: BufRead>(reader: R) -> Result<EmbeddingTable, EmbeddingError> {
    let mut header: Option<(usize, usize)> = None;
    let mut table: Option<EmbeddingTable> = None;

    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        if i == 0 {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if let [n, d] = parts[..] {
                if let (Ok(n), Ok(d)) = (n.parse::<usize>(), d.parse::<usize>()) {
                    if d == 0 {
                        return Err(EmbeddingError::Parse { line: 1, message: "dimension must be positive".into() });
                    }
                    header = Some((n, d));
                    table = Some(EmbeddingTable::new(d));
                    continue;
                }
            }
        }
        let token = fields.next().expect("non-empty line has a field");
        let values = fields
            .map(|f| {
                f.parse::<f64>().map_err(|_| EmbeddingError::Parse {
                    line: lineno,
                    message: format!("bad float {f:?} for token {token:?}"),
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(EmbeddingError::Parse { line: lineno, message: format!("non-finite value for {token:?}") });
        }
        let t = table.get_or_insert_with(|| EmbeddingTable::new(values.len()));
        if values.len() != t.dim || t.dim == 0 {
            return Err(EmbeddingError::Dimension { line: lineno, expected: t.dim, found: values.len() });
        }
        t.push(token.to_string(), &values)?;
    }

    let table = table.unwrap_or_else(|| EmbeddingTable::new(header.map_or(0, |h| h.1)));
    if let Some((n, _)) = header {
        if n != table.len() {
            return Err(EmbeddingError::RowCount { expected: n, found: table.len() });
        }
    }
    Ok(table)
}

pub fn load_embeddings_file(path: &std::path::Path) -> Result<EmbeddingTable, EmbeddingError> {
    let file = std::fs::File::open(path)?;
    load_embeddings(std::io::BufReader::new(file))
}
