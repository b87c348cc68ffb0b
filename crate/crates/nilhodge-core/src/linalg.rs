//! Dense exact linear algebra over the Gaussian rationals.
//!
//! Matrices are row-major with explicit zero-row/zero-column support, since
//! plenty of the bigraded blocks downstream are genuinely empty. Subspaces
//! are kept in reduced row echelon form, which makes them canonical: two
//! subspaces are equal iff their stored bases are equal.

use crate::scalar::GaussianRational;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix has non-real entries")]
    NotReal,
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}

/// Dense matrix over Q(i), acting on coordinate columns.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, GaussianRational::one());
        }
        m
    }

    /// Build from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix constructor"
        );
        ExactMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: Vec<Vec<GaussianRational>>, nrows: usize) -> Self {
        let ncols = cols.len();
        assert!(cols.iter().all(|c| c.len() == nrows));
        let mut m = ExactMatrix::zeros(nrows, ncols);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Integer convenience constructor, mostly for tests.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| GaussianRational::from_int(n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<GaussianRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussianRational::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut m = ExactMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(GaussianRational::conj).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().conj()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut m = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = m.get(i, j).clone() + a * b;
                    m.set(i, j, cur);
                }
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Apply to a coordinate column.
    pub fn apply(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = GaussianRational::zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += &(a * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn vstack(top: &Self, bottom: &Self) -> Self {
        assert_eq!(top.cols, bottom.cols);
        let mut data = top.data.clone();
        data.extend(bottom.data.iter().cloned());
        ExactMatrix {
            rows: top.rows + bottom.rows,
            cols: top.cols,
            data,
        }
    }

    pub fn hstack(left: &Self, right: &Self) -> Self {
        assert_eq!(left.rows, right.rows);
        let mut m = ExactMatrix::zeros(left.rows, left.cols + right.cols);
        for r in 0..left.rows {
            for c in 0..left.cols {
                m.set(r, c, left.get(r, c).clone());
            }
            for c in 0..right.cols {
                m.set(r, left.cols + c, right.get(r, c).clone());
            }
        }
        m
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..a.cols {
            if pivot_row >= a.rows {
                break;
            }
            let Some(src) = (pivot_row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..a.cols {
                    let hi = a.get(pivot_row, c).clone();
                    let lo = a.get(src, c).clone();
                    a.set(pivot_row, c, lo);
                    a.set(src, c, hi);
                }
            }
            let inv = a.get(pivot_row, col).inv().expect("nonzero pivot");
            for c in col..a.cols {
                let v = a.get(pivot_row, c) * &inv;
                a.set(pivot_row, c, v);
            }
            for r in 0..a.rows {
                if r == pivot_row || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for c in col..a.cols {
                    let v = a.get(r, c) - &(&factor * a.get(pivot_row, c));
                    a.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (a, pivots)
    }

    /// Exact rank over Q(i).
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space; `dim = cols - rank`, and every returned
    /// vector is annihilated exactly.
    pub fn kernel(&self) -> Subspace {
        let (rref, pivots) = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![GaussianRational::zero(); self.cols];
            vec[free] = GaussianRational::one();
            for (col, slot) in pivot_of_col.iter().enumerate() {
                if let Some(row) = slot {
                    vec[col] = -rref.get(*row, free);
                }
            }
            basis.push(vec);
        }
        Subspace::span(self.cols, basis)
    }

    /// Particular solution of `self * x = rhs`, with free coordinates set to
    /// zero; `None` when inconsistent.
    pub fn solve(&self, rhs: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        assert_eq!(rhs.len(), self.rows);
        let rhs_col = ExactMatrix::from_columns(vec![rhs.to_vec()], self.rows);
        let aug = ExactMatrix::hstack(self, &rhs_col);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![GaussianRational::zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn det(&self) -> GaussianRational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return GaussianRational::zero();
            };
            if src != col {
                for c in 0..n {
                    let hi = a.get(col, c).clone();
                    let lo = a.get(src, c).clone();
                    a.set(col, c, lo);
                    a.set(src, c, hi);
                }
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det *= &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col) * &inv;
                for c in col..n {
                    let v = a.get(r, c) - &(&factor * a.get(col, c));
                    a.set(r, c, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = ExactMatrix::hstack(self, &ExactMatrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| k != c) {
            return Err(LinalgError::Singular);
        }
        let mut inv = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(GaussianRational::is_real)
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A linear subspace of a fixed coordinate space, stored as the canonical
/// reduced-row-echelon basis of its row space.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<GaussianRational>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut basis = Vec::new();
        for k in 0..ambient {
            let mut v = vec![GaussianRational::zero(); ambient];
            v[k] = GaussianRational::one();
            basis.push(v);
        }
        Subspace { ambient, basis }
    }

    /// The span of the given vectors, canonicalized.
    pub fn span(ambient: usize, vectors: Vec<Vec<GaussianRational>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient));
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let (rref, pivots) = ExactMatrix::from_rows(vectors).rref();
        let basis = (0..pivots.len()).map(|r| rref.row(r).to_vec()).collect();
        Subspace { ambient, basis }
    }

    /// Span of the coordinate axes `offset..offset+len`.
    pub fn coordinate_block(ambient: usize, offset: usize, len: usize) -> Self {
        let mut basis = Vec::new();
        for k in offset..offset + len {
            let mut v = vec![GaussianRational::zero(); ambient];
            v[k] = GaussianRational::one();
            basis.push(v);
        }
        Subspace { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<GaussianRational>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> ExactMatrix {
        if self.basis.is_empty() {
            ExactMatrix::zeros(0, self.ambient)
        } else {
            ExactMatrix::from_rows(self.basis.clone())
        }
    }

    pub fn contains(&self, v: &[GaussianRational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // Reduce v against the echelon basis; membership iff it reduces to 0.
        let mut w = v.to_vec();
        for row in &self.basis {
            let lead = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("nonzero basis row");
            if w[lead].is_zero() {
                continue;
            }
            let factor = w[lead].clone();
            for (wk, rk) in w.iter_mut().zip(row) {
                *wk -= &(&factor * rk);
            }
        }
        w.iter().all(GaussianRational::is_zero)
    }

    pub fn is_contained_in(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, vs))
    }

    /// Annihilator in the dual coordinates under the standard (non-conjugated)
    /// pairing: all `f` with `f . v = 0` for every `v` in the subspace.
    pub fn annihilator(&self) -> Subspace {
        self.basis_matrix().kernel()
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        // ann(U cap V) = ann(U) + ann(V).
        let ann = self.annihilator().sum(&other.annihilator())?;
        Ok(ann.annihilator())
    }

    /// `(U + V, U cap V)` in one call.
    pub fn sum_intersect(&self, other: &Self) -> Result<(Self, Self), LinalgError> {
        Ok((self.sum(other)?, self.intersect(other)?))
    }

    /// Image under a matrix mapping this ambient space into `m.rows()`.
    pub fn image_under(&self, m: &ExactMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::span(m.rows(), self.basis.iter().map(|v| m.apply(v)).collect())
    }

    /// `{v : m v in w}` for `m` mapping this module's coordinates to
    /// `w.ambient_dim()` coordinates.
    pub fn preimage(m: &ExactMatrix, w: &Subspace) -> Subspace {
        assert_eq!(m.rows(), w.ambient_dim());
        let ann = w.annihilator().basis_matrix();
        ann.mul(m).kernel()
    }

    /// Entrywise complex conjugate of the subspace.
    pub fn conj(&self) -> Subspace {
        Subspace::span(
            self.ambient,
            self.basis
                .iter()
                .map(|v| v.iter().map(GaussianRational::conj).collect())
                .collect(),
        )
    }

    /// Greedy complement: basis vectors of `whole` (in canonical order) that
    /// extend `self` to all of `whole`. Requires `self` to be contained in
    /// `whole`.
    pub fn extend_within(&self, whole: &Subspace) -> Vec<Vec<GaussianRational>> {
        assert!(self.is_contained_in(whole), "complement of a non-subspace");
        let mut complement = Vec::new();
        let mut current = self.clone();
        for v in &whole.basis {
            if !current.contains(v) {
                let mut vs = current.basis.clone();
                vs.push(v.clone());
                current = Subspace::span(self.ambient, vs);
                complement.push(v.clone());
            }
        }
        assert_eq!(current.dim(), whole.dim());
        complement
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {})", self.dim(), self.ambient)
    }
}

/// Sylvester signature `(b_plus, b_minus, b_zero)` of a symmetric matrix
/// with rational entries, by exact congruence diagonalization.
pub fn congruence_signature(m: &ExactMatrix) -> Result<(usize, usize, usize), LinalgError> {
    if m.rows() != m.cols() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_real() {
        return Err(LinalgError::NotReal);
    }
    if !m.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut plus = 0;
    let mut minus = 0;
    let swap_rows_cols = |a: &mut ExactMatrix, x: usize, y: usize| {
        for c in 0..n {
            let u = a.get(x, c).clone();
            let v = a.get(y, c).clone();
            a.set(x, c, v);
            a.set(y, c, u);
        }
        for r in 0..n {
            let u = a.get(r, x).clone();
            let v = a.get(r, y).clone();
            a.set(r, x, v);
            a.set(r, y, u);
        }
    };
    for k in 0..n {
        if a.get(k, k).is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                swap_rows_cols(&mut a, k, j);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_zero())
            {
                // All remaining diagonal entries vanish; symmetrize a
                // hyperbolic pair onto the diagonal (valid away from char 2).
                if i != k {
                    swap_rows_cols(&mut a, k, i);
                }
                for c in 0..n {
                    let v = a.get(k, c) + a.get(j, c);
                    a.set(k, c, v);
                }
                for r in 0..n {
                    let v = a.get(r, k) + a.get(r, j);
                    a.set(r, k, v);
                }
            } else {
                break; // remaining block is identically zero
            }
        }
        let pivot = a.get(k, k).clone();
        if num_traits::Signed::is_positive(&pivot.re) {
            plus += 1;
        } else {
            minus += 1;
        }
        let inv = pivot.inv().expect("nonzero pivot");
        for r in k + 1..n {
            if a.get(r, k).is_zero() {
                continue;
            }
            let factor = a.get(r, k) * &inv;
            for c in 0..n {
                let v = a.get(r, c) - &(&factor * a.get(k, c));
                a.set(r, c, v);
            }
            // Mirror the row operation on columns to preserve congruence.
            for rr in 0..n {
                let v = a.get(rr, r) - &(&factor * a.get(rr, k));
                a.set(rr, r, v);
            }
        }
    }
    let zero = n - plus - minus;
    Ok((plus, minus, zero))
}
