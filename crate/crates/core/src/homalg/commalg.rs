use num_traits::{One, Zero};

use super::matrix::{solve, vec_is_zero, Matrix, SolveOutcome};
use super::scalar::{factorial, Scalar};
use crate::{Error, Result};

/// Finite-dimensional unital commutative ℚ-algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommAlgebra {
    labels: Vec<String>,
    /// `table[i][j]` is `b_i·b_j` in the basis.
    table: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

impl CommAlgebra {
    /// Validates commutativity, associativity and the unit on basis elements.
    pub fn new(labels: Vec<String>, table: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::input("algebra must have positive dimension"));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::shape(format!("multiplication table must be {n}x{n}x{n}")));
        }
        if unit.len() != n {
            return Err(Error::shape("unit has the wrong length"));
        }
        let a = CommAlgebra { labels, table, unit };
        for i in 0..n {
            for j in 0..n {
                if a.table[i][j] != a.table[j][i] {
                    return Err(Error::input(format!(
                        "multiplication is not commutative on ({}, {})",
                        a.labels[i], a.labels[j]
                    )));
                }
            }
        }
        for i in 0..n {
            let e = a.basis(i);
            if a.mul(&a.unit, &e) != e {
                return Err(Error::input(format!("unit does not fix {}", a.labels[i])));
            }
            for j in 0..n {
                let ij = a.mul(&e, &a.basis(j));
                for k in 0..n {
                    let ek = a.basis(k);
                    if a.mul(&ij, &ek) != a.mul(&e, &a.mul(&a.basis(j), &ek)) {
                        return Err(Error::input(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            a.labels[i], a.labels[j], a.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(a)
    }

    pub fn rationals() -> Self {
        CommAlgebra {
            labels: vec!["1".into()],
            table: vec![vec![vec![Scalar::one()]]],
            unit: vec![Scalar::one()],
        }
    }

    /// `ℚ[t]/(tⁿ)` with basis `1, t, …, t^{n−1}`.
    pub fn truncated_polynomials(n: usize) -> Self {
        assert!(n >= 1);
        let labels = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = vec![Scalar::zero(); n];
                        if i + j < n {
                            v[i + j] = Scalar::one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![Scalar::zero(); n];
        unit[0] = Scalar::one();
        CommAlgebra { labels, table, unit }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn one(&self) -> Vec<Scalar> {
        self.unit.clone()
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![Scalar::zero(); self.dim()]
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[i] = Scalar::one();
        v
    }

    pub fn scalar(&self, c: &Scalar) -> Vec<Scalar> {
        self.unit.iter().map(|u| u * c).collect()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = self.zero();
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let c = &a[i] * &b[j];
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &c * t;
                    }
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `a`.
    pub fn mul_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_columns(&cols, self.dim())
    }

    /// `self ⊗ other` with basis index `i·dim(other) + j`.
    pub fn tensor(&self, other: &CommAlgebra) -> CommAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}*{b}")))
            .collect();
        let mut table = vec![vec![vec![Scalar::zero(); n * m]; n * m]; n * m];
        for i1 in 0..n {
            for j1 in 0..m {
                for i2 in 0..n {
                    for j2 in 0..m {
                        let row = &mut table[i1 * m + j1][i2 * m + j2];
                        for (k, x) in self.table[i1][i2].iter().enumerate() {
                            if x.is_zero() {
                                continue;
                            }
                            for (l, y) in other.table[j1][j2].iter().enumerate() {
                                if !y.is_zero() {
                                    row[k * m + l] += x * y;
                                }
                            }
                        }
                    }
                }
            }
        }
        let unit = self
            .unit
            .iter()
            .flat_map(|a| other.unit.iter().map(move |b| a * b))
            .collect();
        CommAlgebra { labels, table, unit }
    }

    /// `a ⊗ b` as an element of `A.tensor(B)`.
    pub fn tensor_element(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
    }

    /// Inverse of `a`, if it exists.
    pub fn inverse(&self, a: &[Scalar]) -> Option<Vec<Scalar>> {
        match solve(&self.mul_matrix(a), &self.unit) {
            Ok(SolveOutcome::Solved(x)) => Some(x),
            _ => None,
        }
    }

    /// Whether a ℚ-linear map given as a `dim(target) × dim(self)` matrix is a unital
    /// algebra homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &CommAlgebra, map: &Matrix) -> bool {
        if map.shape() != (target.dim(), self.dim()) {
            return false;
        }
        if map.apply(&self.unit) != target.unit {
            return false;
        }
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let lhs = map.apply(&self.table[i][j]);
                let rhs = target.mul(&map.column(i), &map.column(j));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Square or rectangular matrix with entries in a [`CommAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgMatrix {
    pub rows: usize,
    pub cols: usize,
    /// Row-major entries, each a coordinate vector in the algebra.
    pub entries: Vec<Vec<Scalar>>,
}

impl AlgMatrix {
    pub fn zeros(alg: &CommAlgebra, rows: usize, cols: usize) -> Self {
        AlgMatrix { rows, cols, entries: vec![alg.zero(); rows * cols] }
    }

    pub fn identity(alg: &CommAlgebra, n: usize) -> Self {
        let mut m = AlgMatrix::zeros(alg, n, n);
        for i in 0..n {
            m.entries[i * n + i] = alg.one();
        }
        m
    }

    /// Embeds a rational matrix via `ℚ → A`.
    pub fn from_rational(alg: &CommAlgebra, m: &Matrix) -> Self {
        let entries = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| alg.scalar(&m[(i, j)]))
            .collect();
        AlgMatrix { rows: m.rows(), cols: m.cols(), entries }
    }

    pub fn get(&self, i: usize, j: usize) -> &[Scalar] {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Vec<Scalar>) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| vec_is_zero(e))
    }

    pub fn add(&self, other: &AlgMatrix) -> AlgMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        AlgMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &AlgMatrix) -> AlgMatrix {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> AlgMatrix {
        let entries = self.entries.iter().map(|e| e.iter().map(|x| x * c).collect()).collect();
        AlgMatrix { rows: self.rows, cols: self.cols, entries }
    }

    /// Multiplies every entry by the algebra element `a`.
    pub fn scale_by(&self, alg: &CommAlgebra, a: &[Scalar]) -> AlgMatrix {
        let entries = self.entries.iter().map(|e| alg.mul(a, e)).collect();
        AlgMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, alg: &CommAlgebra, other: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = AlgMatrix::zeros(alg, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if vec_is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if vec_is_zero(b) {
                        continue;
                    }
                    let p = alg.mul(a, b);
                    let e = &mut out.entries[i * other.cols + j];
                    for (x, y) in e.iter_mut().zip(p) {
                        *x += y;
                    }
                }
            }
        }
        out
    }

    /// Applies a ℚ-linear map `A → B` entrywise.
    pub fn map_entries(&self, map: &Matrix) -> AlgMatrix {
        let entries = self.entries.iter().map(|e| map.apply(e)).collect();
        AlgMatrix { rows: self.rows, cols: self.cols, entries }
    }

    /// ℚ-linear matrix of `x ↦ self·x` on `A^{cols}` → `A^{rows}`, coordinates
    /// ordered (row, algebra basis).
    fn left_action(&self, alg: &CommAlgebra) -> Matrix {
        let d = alg.dim();
        let mut m = Matrix::zeros(self.rows * d, self.cols * d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let block = alg.mul_matrix(self.get(i, j));
                for r in 0..d {
                    for c in 0..d {
                        m[(i * d + r, j * d + c)] = block[(r, c)].clone();
                    }
                }
            }
        }
        m
    }

    pub fn inverse(&self, alg: &CommAlgebra) -> Option<AlgMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let d = alg.dim();
        let inv = self.left_action(alg).inverse()?;
        let mut out = AlgMatrix::zeros(alg, n, n);
        let one = alg.one();
        for j in 0..n {
            let mut rhs = vec![Scalar::zero(); n * d];
            rhs[j * d..(j + 1) * d].clone_from_slice(&one);
            let x = inv.apply(&rhs);
            for i in 0..n {
                out.set(i, j, x[i * d..(i + 1) * d].to_vec());
            }
        }
        Some(out)
    }

    /// `Σ N^k/k!` for nilpotent `N`.
    pub fn exp_nilpotent(&self, alg: &CommAlgebra) -> Result<AlgMatrix> {
        let n = self.rows;
        let mut sum = AlgMatrix::identity(alg, n);
        let mut power = AlgMatrix::identity(alg, n);
        for k in 1..=nilpotency_cap(alg, n) {
            power = power.mul(alg, self);
            if power.is_zero() {
                return Ok(sum);
            }
            sum = sum.add(&power.scale(&(Scalar::one() / factorial(k))));
        }
        Err(Error::input("matrix is not nilpotent"))
    }

    /// `log(self)` for unipotent `self`.
    pub fn log_unipotent(&self, alg: &CommAlgebra) -> Result<AlgMatrix> {
        let n = self.rows;
        let x = self.sub(&AlgMatrix::identity(alg, n));
        let mut sum = AlgMatrix::zeros(alg, n, n);
        let mut power = AlgMatrix::identity(alg, n);
        for k in 1..=nilpotency_cap(alg, n) {
            power = power.mul(alg, &x);
            if power.is_zero() {
                return Ok(sum);
            }
            let sign = if k % 2 == 1 { Scalar::one() } else { -Scalar::one() };
            sum = sum.add(&power.scale(&(sign / Scalar::from_integer((k as i64).into()))));
        }
        Err(Error::input("matrix is not unipotent"))
    }
}

fn nilpotency_cap(alg: &CommAlgebra, n: usize) -> usize {
    alg.dim() * n + 1
}
