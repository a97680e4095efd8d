//! Dense exact linear algebra: row reduction, solving, kernels.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(v));
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::domain(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (a, b) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    *o += &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::domain("shape mismatch in subtraction"));
        }
        let mut out = self.clone();
        for (o, b) in out.data.iter_mut().zip(&other.data) {
            *o = &*o - b;
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = reduce_in_place(&mut m, None);
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    /// One solution of `self * x = b`, or `None` when inconsistent.
    ///
    /// Free variables are set to zero, so the result is the first solution in
    /// pivot-column order.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        self.factorize().solve(b)
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let rr = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rr.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &p) in rr.pivots.iter().enumerate() {
                v[p] = -rr.matrix.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn in_column_space(&self, b: &[Scalar]) -> Result<bool> {
        Ok(self.solve(b)?.is_some())
    }

    /// Records the row operations of the reduction so repeated solves are cheap.
    pub fn factorize(&self) -> Factorization {
        let mut m = self.clone();
        let mut ops = Matrix::identity(self.field, self.rows);
        let pivots = reduce_in_place(&mut m, Some(&mut ops));
        Factorization {
            cols: self.cols,
            reduced: m,
            ops,
            pivots,
        }
    }
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// `ops * original = reduced`, with `reduced` in reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Factorization {
    cols: usize,
    reduced: Matrix,
    ops: Matrix,
    pivots: Vec<usize>,
}

impl Factorization {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.ops.rows() {
            return Err(Error::domain(format!(
                "right-hand side of length {} for {} equations",
                b.len(),
                self.ops.rows()
            )));
        }
        let field = self.ops.field();
        let eb = self.ops.mul_vec(b)?;
        if eb[self.pivots.len()..].iter().any(|v| !v.is_zero()) {
            return Ok(None);
        }
        let mut x = vec![field.zero(); self.cols];
        for (row, &p) in self.pivots.iter().enumerate() {
            x[p] = eb[row].clone();
        }
        Ok(Some(x))
    }

    pub fn reduced(&self) -> &Matrix {
        &self.reduced
    }
}

fn reduce_in_place(m: &mut Matrix, mut ops: Option<&mut Matrix>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        swap_rows(m, pr, r);
        if let Some(o) = ops.as_deref_mut() {
            swap_rows(o, pr, r);
        }
        let inv = m.get(r, c).inv();
        scale_row(m, r, &inv);
        if let Some(o) = ops.as_deref_mut() {
            scale_row(o, r, &inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if factor.is_zero() {
                continue;
            }
            axpy_row(m, i, r, &factor);
            if let Some(o) = ops.as_deref_mut() {
                axpy_row(o, i, r, &factor);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..m.cols {
        m.data.swap(a * m.cols + c, b * m.cols + c);
    }
}

fn scale_row(m: &mut Matrix, r: usize, s: &Scalar) {
    for c in 0..m.cols {
        let idx = r * m.cols + c;
        if !m.data[idx].is_zero() {
            m.data[idx] = &m.data[idx] * s;
        }
    }
}

/// row[target] -= factor * row[source]
fn axpy_row(m: &mut Matrix, target: usize, source: usize, factor: &Scalar) {
    for c in 0..m.cols {
        let s = &m.data[source * m.cols + c];
        if s.is_zero() {
            continue;
        }
        let delta = factor * s;
        let t = &mut m.data[target * m.cols + c];
        *t = &*t - &delta;
    }
}
