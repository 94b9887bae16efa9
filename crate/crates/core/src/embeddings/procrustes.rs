use crate::corpus::Lang;

use super::linalg::{svd, Matrix};
use super::{EmbeddingError, EmbeddingTable};

/// Orthogonal map from a source embedding space into a target space,
/// applied as `x ↦ W x`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalMap {
    pub w: Matrix,
    pub source_lang: Lang,
    pub target_lang: Lang,
}

impl OrthogonalMap {
    pub fn identity(dim: usize) -> Self {
        OrthogonalMap { w: Matrix::identity(dim), source_lang: Lang::Unknown, target_lang: Lang::Unknown }
    }

    pub fn dim(&self) -> usize {
        self.w.rows()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.w.matvec(x)
    }

    pub fn apply_table(&self, table: &EmbeddingTable) -> Result<EmbeddingTable, EmbeddingError> {
        if table.dim() != self.dim() {
            return Err(EmbeddingError::DimMismatch(table.dim(), self.dim()));
        }
        Ok(table.map_rows(self.dim(), |row| self.apply(row)))
    }

    /// `max |WᵀW − I|`.
    pub fn orthogonality_residual(&self) -> f64 {
        self.w.orthogonality_residual()
    }

    /// `‖W Xᵀ − Yᵀ‖_F` over paired rows.
    pub fn alignment_error(&self, x: &Matrix, y: &Matrix) -> f64 {
        frobenius_error(&self.w, x, y)
    }
}

pub(crate) fn frobenius_error(w: &Matrix, x: &Matrix, y: &Matrix) -> f64 {
    x.matmul(&w.transpose()).sub(y).frobenius_norm()
}

/// Solves `min ‖W xᵢ − yᵢ‖` over orthogonal `W` for paired rows of `x` and `y`
/// (both `k × d`).
///
/// With `M = Yᵀ X = U Σ Vᵀ` the minimizer is `W = U Vᵀ`.
pub fn procrustes_align(x: &Matrix, y: &Matrix) -> Result<OrthogonalMap, EmbeddingError> {
    if x.rows() < 1 {
        return Err(EmbeddingError::EmptyDictionary);
    }
    if x.rows() != y.rows() || x.cols() != y.cols() {
        return Err(EmbeddingError::DimMismatch(x.cols(), y.cols()));
    }
    let d = x.cols();
    let mut m = Matrix::zeros(d, d);
    for r in 0..x.rows() {
        let (xr, yr) = (x.row(r), y.row(r));
        for i in 0..d {
            if yr[i] == 0.0 {
                continue;
            }
            for (j, &xv) in xr.iter().enumerate() {
                m[(i, j)] += yr[i] * xv;
            }
        }
    }
    let decomposition = svd(&m)?;
    let scale = decomposition.singular_values.first().copied().unwrap_or(0.0);
    if scale == 0.0 || !scale.is_finite() {
        return Err(EmbeddingError::Degenerate);
    }
    let w = decomposition.u.matmul(&decomposition.v.transpose());
    Ok(OrthogonalMap { w, source_lang: Lang::Unknown, target_lang: Lang::Unknown })
}
