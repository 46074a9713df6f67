//! Dense matrices over exact rationals, with rank / kernel / affine-solve
//! built on a sparsity-aware Gauss–Jordan elimination.
//!
//! Elimination normalizes each pivot to 1 as it goes, so intermediate
//! entries stay in reduced form and never accumulate spurious factors.
//! Pivot rows are chosen deterministically (sparsest candidate, ties by
//! row index), which keeps every public result reproducible bit for bit.

use crate::scalar::Scalar;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(
        "complex consistency violated: image rank {image_rank} exceeds kernel dimension {kernel_dim} (composite of consecutive differentials is nonzero)"
    )]
    ComplexInconsistency { kernel_dim: usize, image_rank: usize },
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * k).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    /// Matrix product, skipping zero entries of `self`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "product shape mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = &mut out.entries[r * other.cols + c];
                    *cur += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    let a = self.at(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += a * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    fn to_sparse_rows(&self) -> Vec<SparseRow> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect()
    }

    /// Rank over the rationals, exact.
    pub fn rank(&self) -> usize {
        let mut rows = self.to_sparse_rows();
        rref(&mut rows, self.cols).len()
    }

    /// Basis of the right null space; each vector satisfies `M v = 0`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut rows = self.to_sparse_rows();
        let pivots = rref(&mut rows, self.cols);
        kernel_from_rref(&rows, &pivots, self.cols)
    }

    /// Solves `M x = b`. Returns a particular solution together with a
    /// kernel basis when consistent, `None` otherwise.
    pub fn solve_affine(&self, b: &[Scalar]) -> Option<(Vec<Scalar>, Vec<Vec<Scalar>>)> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        // Augment b as an extra column that elimination never pivots on.
        let mut rows: Vec<SparseRow> = self.to_sparse_rows();
        for (r, row) in rows.iter_mut().enumerate() {
            if !b[r].is_zero() {
                row.push((self.cols, b[r].clone()));
            }
        }
        let pivots = rref(&mut rows, self.cols);
        // Inconsistent iff some reduced row is zero on the variables but not
        // on the augmented column.
        for row in &rows {
            if row.len() == 1 && row[0].0 == self.cols {
                return None;
            }
        }
        let mut particular = vec![Scalar::zero(); self.cols];
        for &(col, row_idx) in &pivots {
            if let Some(v) = row_get(&rows[row_idx], self.cols) {
                particular[col] = v.clone();
            }
        }
        let kernel = kernel_from_rref(&rows, &pivots, self.cols);
        Some((particular, kernel))
    }
}

/// `kernel_dim - image_rank`, guarding the consistency of a complex.
pub fn quotient_dim(kernel_dim: usize, image_rank: usize) -> Result<usize, LinalgError> {
    if image_rank > kernel_dim {
        return Err(LinalgError::ComplexInconsistency {
            kernel_dim,
            image_rank,
        });
    }
    Ok(kernel_dim - image_rank)
}

/// Sorted-by-column sparse row.
type SparseRow = Vec<(usize, Scalar)>;

fn row_get(row: &SparseRow, col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |&(c, _)| c)
        .ok()
        .map(|i| &row[i].1)
}

/// `dst += coeff * src`, merging sorted sparse rows and dropping zeros.
fn row_axpy(dst: &SparseRow, coeff: &Scalar, src: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        match (dst.get(i), src.get(j)) {
            (Some((dc, dv)), Some((sc, _))) if dc < sc => {
                out.push((*dc, dv.clone()));
                i += 1;
            }
            (Some((dc, _)), Some((sc, sv))) if sc < dc => {
                let v = coeff * sv;
                if !v.is_zero() {
                    out.push((*sc, v));
                }
                j += 1;
            }
            (Some((dc, dv)), Some((_, sv))) => {
                let v = dv + &(coeff * sv);
                if !v.is_zero() {
                    out.push((*dc, v));
                }
                i += 1;
                j += 1;
            }
            (Some((dc, dv)), None) => {
                out.push((*dc, dv.clone()));
                i += 1;
            }
            (None, Some((sc, sv))) => {
                let v = coeff * sv;
                if !v.is_zero() {
                    out.push((*sc, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// In-place reduced row echelon form over columns `0..cols`.
///
/// Returns the pivot positions as `(column, row_index)` in column order.
/// Columns at index >= `cols` (used for augmented right-hand sides) are
/// carried along but never chosen as pivots.
fn rref(rows: &mut [SparseRow], cols: usize) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut used = vec![false; rows.len()];
    for col in 0..cols {
        let mut best: Option<usize> = None;
        for (r, row) in rows.iter().enumerate() {
            if used[r] || row_get(row, col).is_none() {
                continue;
            }
            best = match best {
                None => Some(r),
                Some(b) if rows[r].len() < rows[b].len() => Some(r),
                other => other,
            };
        }
        let Some(p) = best else { continue };
        used[p] = true;
        let inv = row_get(&rows[p], col).expect("pivot present").recip();
        if !inv.is_one() {
            for (_, v) in rows[p].iter_mut() {
                *v *= &inv;
            }
        }
        let pivot_row = rows[p].clone();
        for r in 0..rows.len() {
            if r == p {
                continue;
            }
            if let Some(v) = row_get(&rows[r], col) {
                let coeff = -v;
                rows[r] = row_axpy(&rows[r], &coeff, &pivot_row);
            }
        }
        pivots.push((col, p));
    }
    pivots
}

fn kernel_from_rref(
    rows: &[SparseRow],
    pivots: &[(usize, usize)],
    cols: usize,
) -> Vec<Vec<Scalar>> {
    let mut is_pivot_col = vec![false; cols];
    for &(c, _) in pivots {
        is_pivot_col[c] = true;
    }
    let mut basis = Vec::with_capacity(cols - pivots.len());
    for free in 0..cols {
        if is_pivot_col[free] {
            continue;
        }
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for &(pc, row_idx) in pivots {
            if let Some(entry) = row_get(&rows[row_idx], free) {
                v[pc] = -entry;
            }
        }
        basis.push(v);
    }
    basis
}
