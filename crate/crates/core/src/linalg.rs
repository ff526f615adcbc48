//! Dense exact matrices over a [`FieldSpec`].
//!
//! Elimination always picks the first nonzero entry of the current column as
//! pivot, so every basis this module returns is reproducible.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{FieldElem, FieldEmbedding, FieldSpec};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<u32> = self.row(r).iter().map(|e| e.code()).collect();
            write!(f, "{row:?}")?;
        }
        write!(f, "]")
    }
}

/// Result of [`Mat::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn same_field(a: &FieldSpec, b: &FieldSpec) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch(format!("{a} vs {b}")))
    }
}

impl Mat {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<FieldElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|e| e.code() >= field.size()) {
            return Err(Error::FieldMismatch(format!("entry outside {field}")));
        }
        Ok(Mat { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Mat { field: field.clone(), rows, cols, data: vec![FieldElem::ZERO; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        Self::scalar(field, n, field.one())
    }

    pub fn scalar(field: &FieldSpec, n: usize, c: FieldElem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_rows(field: &FieldSpec, rows: &[Vec<FieldElem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(field: &FieldSpec, rows: usize, columns: &[Vec<FieldElem>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::ShapeMismatch("column length".into()));
            }
            for (r, &x) in col.iter().enumerate() {
                m.data[r * columns.len() + c] = x;
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: FieldElem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<FieldElem>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        same_field(&self.field, &other.field)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o = f.mul_add(*o, a, b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(FieldElem::ZERO, |acc, (&a, &b)| f.mul_add(acc, a, b)))
            .collect())
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    fn zip_with(&self, other: &Mat, op: impl Fn(FieldElem, FieldElem) -> FieldElem) -> Result<Mat> {
        same_field(&self.field, &other.field)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("elementwise operation on different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect();
        Ok(Mat { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        let f = self.field.clone();
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        let f = self.field.clone();
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, c: FieldElem) -> Mat {
        let f = &self.field;
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }

    /// `Some(c)` iff the matrix is `c·I`.
    pub fn as_scalar(&self) -> Option<FieldElem> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0);
        for r in 0..self.rows {
            for col in 0..self.cols {
                let expect = if r == col { c } else { FieldElem::ZERO };
                if self.get(r, col) != expect {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        same_field(&self.field, &other.field)?;
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack row counts differ".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Mat { field: self.field.clone(), rows: self.rows, cols, data })
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        same_field(&self.field, &other.field)?;
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Columns `start..end`.
    pub fn column_block(&self, start: usize, end: usize) -> Mat {
        let mut data = Vec::with_capacity(self.rows * (end - start));
        for r in 0..self.rows {
            data.extend_from_slice(&self.row(r)[start..end]);
        }
        Mat { field: self.field.clone(), rows: self.rows, cols: end - start, data }
    }

    /// Submatrix of rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for r in r0..r1 {
            data.extend_from_slice(&self.row(r)[c0..c1]);
        }
        Mat { field: self.field.clone(), rows: r1 - r0, cols: c1 - c0, data }
    }

    /// Re-encode every entry through a field embedding.
    pub fn map_field(&self, emb: &FieldEmbedding) -> Result<Mat> {
        same_field(&self.field, emb.source())?;
        Ok(Mat {
            field: emb.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| emb.apply(a)).collect(),
        })
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut prow = 0usize;
        for col in 0..cols {
            if prow == rows {
                break;
            }
            let Some(found) = (prow..rows).find(|&r| !a[r * cols + col].is_zero()) else {
                continue;
            };
            if found != prow {
                for c in col..cols {
                    a.swap(found * cols + c, prow * cols + c);
                }
            }
            let inv = f.inv(a[prow * cols + col]).expect("pivot is nonzero");
            for c in col..cols {
                a[prow * cols + c] = f.mul(inv, a[prow * cols + c]);
            }
            let (before, rest) = a.split_at_mut(prow * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [FieldElem]| {
                let factor = row[col];
                if factor.is_zero() {
                    return;
                }
                let neg = f.neg(factor);
                for c in col..cols {
                    row[c] = f.mul_add(row[c], neg, pivot_row[c]);
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(col);
            prow += 1;
        }
        Rref { matrix: Mat { field: f.clone(), rows, cols, data: a }, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : A x = 0}`, one vector per free column in ascending
    /// order, each with a 1 in its free column.
    pub fn null_space(&self) -> Vec<Vec<FieldElem>> {
        let f = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![FieldElem::ZERO; self.cols];
                x[free] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(matrix.get(r, free));
                }
                x
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(&self.field, n)).ok()?;
        let red = aug.rref();
        if red.pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) || red.rank < n {
            return None;
        }
        Some(red.matrix.column_block(n, 2 * n))
    }

    /// Solve `basis · X = targets` for `X`, where `basis` has full column rank.
    /// Returns `None` when some target column is outside the column span.
    pub fn solve_in_span(basis: &Mat, targets: &Mat) -> Result<Option<Mat>> {
        let k = basis.cols;
        let aug = basis.hstack(targets)?;
        let red = aug.rref();
        if red.pivots.len() < k || red.pivots[..k].iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Contract("span basis is not linearly independent".into()));
        }
        if red.pivots.len() > k {
            return Ok(None);
        }
        Ok(Some(red.matrix.block(0, k, k, k + targets.cols)))
    }

    /// Entries as nested row lists of report encodings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|r| serde_json::Value::Array(self.row(r).iter().map(|&x| self.field.to_json(x)).collect()))
                .collect(),
        )
    }
}

/// Incrementally maintained echelon basis of a subspace of `F^n`, used for
/// spin-up and span-membership tests.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: FieldSpec,
    dim: usize,
    // Reduced rows, each with a leading 1 at `pivots[i]`.
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: &FieldSpec, dim: usize) -> Self {
        EchelonBasis { field: field.clone(), dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p];
            if c.is_zero() {
                continue;
            }
            let neg = f.neg(c);
            for (x, &r) in w.iter_mut().zip(row) {
                *x = f.mul_add(*x, neg, r);
            }
        }
        w
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` if it is outside the current span; returns whether it was new.
    pub fn insert(&mut self, v: &[FieldElem]) -> bool {
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(w[p]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(inv, *x);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c.is_zero() {
                continue;
            }
            let neg = f.neg(c);
            for (x, &r) in row.iter_mut().zip(&w) {
                *x = f.mul_add(*x, neg, r);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, w);
        true
    }
}
