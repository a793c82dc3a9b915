use std::fmt;

use num_traits::{One, Zero};

use super::scalar::{height, Scalar};
use crate::{Error, Result};

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

/// Outcome of [`solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(Vec<Scalar>),
    Inconsistent,
}

impl SolveOutcome {
    pub fn into_option(self) -> Option<Vec<Scalar>> {
        match self {
            SolveOutcome::Solved(x) => Some(x),
            SolveOutcome::Inconsistent => None,
        }
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::shape(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<Scalar>], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, data: entries.iter().map(|&x| super::scalar::int(x)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Gauss–Jordan reduction. Within each column the pivot row is the one whose entry
    /// has the smallest |numerator·denominator|; the resulting RREF does not depend on
    /// that choice.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let best = (r..m.rows)
                .filter(|&i| !m[(i, c)].is_zero())
                .min_by(|&a, &b| height(&m[(a, c)]).cmp(&height(&m[(b, c)])));
            let Some(p) = best else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(i, j)] - &f * &m[(r, j)];
                    m[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let aug = self.hstack(&Matrix::identity(n)).rref();
        if aug.pivots.len() < n || aug.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug.matrix[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Basis of the kernel read off the RREF: one vector per free column, with a 1 in that
/// column. The count is `cols - rank`.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    kernel_with_free_columns(m).0
}

/// [`kernel_basis`] together with the free columns, in the same order. The coordinates
/// of a kernel vector in this basis are its entries at the free columns.
pub fn kernel_with_free_columns(m: &Matrix) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let Rref { matrix: r, pivots } = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..m.cols).filter(|&f| !is_pivot[f]).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[f] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect();
    (basis, free)
}

/// Solves `m·x = b`. Free variables are set to zero, so the returned solution is supported
/// on pivot columns only.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<SolveOutcome> {
    if b.len() != m.rows {
        return Err(Error::shape(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows
        )));
    }
    let aug = m.hstack(&Matrix::from_columns(&[b.to_vec()], m.rows)).rref();
    if aug.pivots.last() == Some(&m.cols) {
        return Ok(SolveOutcome::Inconsistent);
    }
    let mut x = vec![Scalar::zero(); m.cols];
    for (row, &p) in aug.pivots.iter().enumerate() {
        x[p] = aug.matrix[(row, m.cols)].clone();
    }
    Ok(SolveOutcome::Solved(x))
}

/// Greedy selection of columns that extend the span of `base` (kept in order),
/// scanning `candidates` left to right. Returns the indices of the chosen candidates.
pub(crate) fn extend_basis(base: &[Vec<Scalar>], candidates: &[Vec<Scalar>], dim: usize) -> Vec<usize> {
    let mut current: Vec<Vec<Scalar>> = base.to_vec();
    let mut rank = if current.is_empty() { 0 } else { Matrix::from_columns(&current, dim).rank() };
    let mut chosen = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        current.push(c.clone());
        let r = Matrix::from_columns(&current, dim).rank();
        if r > rank {
            rank = r;
            chosen.push(i);
        } else {
            current.pop();
        }
    }
    chosen
}

pub(crate) fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub(crate) fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn vec_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}
