use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::{Error, Result};

/// Finite-dimensional ℤ-graded ℚ-vector space with a labelled basis in each degree.
///
/// Elements are handled as "global" coordinate vectors: degrees in increasing order,
/// each contributing its basis in label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    labels: BTreeMap<i32, Vec<String>>,
    offsets: BTreeMap<i32, usize>,
    index: HashMap<String, usize>,
    total: usize,
}

impl GradedSpace {
    /// Labels must be distinct across the whole space. Empty degrees are dropped.
    pub fn new(labels: BTreeMap<i32, Vec<String>>) -> Result<Self> {
        let labels: BTreeMap<i32, Vec<String>> =
            labels.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        let mut offsets = BTreeMap::new();
        let mut index = HashMap::new();
        let mut total = 0;
        for (&deg, ls) in &labels {
            offsets.insert(deg, total);
            for l in ls {
                if index.insert(l.clone(), total).is_some() {
                    return Err(Error::input(format!("duplicate basis label {l:?}")));
                }
                total += 1;
            }
        }
        Ok(GradedSpace { labels, offsets, index, total })
    }

    /// Space with anonymous labels `"{prefix}{degree}_{i}"`.
    pub fn from_dims(dims: &BTreeMap<i32, usize>, prefix: &str) -> Self {
        let labels = dims
            .iter()
            .map(|(&d, &n)| (d, (0..n).map(|i| format!("{prefix}{d}_{i}")).collect()))
            .collect();
        GradedSpace::new(labels).expect("generated labels are distinct")
    }

    pub fn zero() -> Self {
        GradedSpace::new(BTreeMap::new()).unwrap()
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.labels.get(&degree).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.total
    }

    /// Degrees with nonzero dimension, increasing.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.labels.keys().copied()
    }

    pub fn labels(&self, degree: i32) -> &[String] {
        self.labels.get(&degree).map_or(&[], Vec::as_slice)
    }

    pub fn all_labels(&self) -> &BTreeMap<i32, Vec<String>> {
        &self.labels
    }

    /// Global index of the first basis vector in `degree`.
    pub fn offset(&self, degree: i32) -> usize {
        match self.offsets.get(&degree) {
            Some(&o) => o,
            None => self.offsets.range(degree..).next().map_or(self.total, |(_, &o)| o),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn label(&self, global: usize) -> &str {
        let d = self.degree_of(global);
        &self.labels[&d][global - self.offsets[&d]]
    }

    pub fn degree_of(&self, global: usize) -> i32 {
        assert!(global < self.total, "basis index {global} out of range");
        *self.offsets.iter().rev().find(|(_, &o)| o <= global).expect("nonempty").0
    }

    /// Global coordinates of the component of `v` in `degree`.
    pub fn component<'a>(&self, v: &'a [Scalar], degree: i32) -> &'a [Scalar] {
        let o = self.offset(degree);
        &v[o..o + self.dim(degree)]
    }

    /// Embeds a degree-local vector into global coordinates.
    pub fn embed(&self, degree: i32, local: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(local.len(), self.dim(degree));
        let mut v = vec![Scalar::zero(); self.total];
        let o = self.offset(degree);
        v[o..o + local.len()].clone_from_slice(local);
        v
    }

    /// The unique degree carrying all nonzero coordinates of `v`, if `v` is homogeneous
    /// and nonzero.
    pub fn homogeneous_degree(&self, v: &[Scalar]) -> Option<i32> {
        let mut deg = None;
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                let d = self.degree_of(i);
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }
}

/// Graded linear map of fixed degree shift, stored as one dense block per source degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub degree_shift: i32,
    blocks: BTreeMap<i32, Matrix>,
}

impl LinearMap {
    /// Missing blocks are zero; all-zero blocks are dropped.
    pub fn new(
        source: GradedSpace,
        target: GradedSpace,
        degree_shift: i32,
        blocks: BTreeMap<i32, Matrix>,
    ) -> Result<Self> {
        for (&n, b) in &blocks {
            let expected = (target.dim(n + degree_shift), source.dim(n));
            if b.shape() != expected {
                return Err(Error::shape(format!(
                    "block at degree {n} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    expected.0,
                    expected.1
                )));
            }
        }
        let blocks = blocks.into_iter().filter(|(_, b)| !b.is_zero()).collect();
        Ok(LinearMap { source, target, degree_shift, blocks })
    }

    pub fn zero(source: GradedSpace, target: GradedSpace, degree_shift: i32) -> Self {
        LinearMap { source, target, degree_shift, blocks: BTreeMap::new() }
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let blocks = space.degrees().map(|d| (d, Matrix::identity(space.dim(d)))).collect();
        LinearMap { source: space.clone(), target: space.clone(), degree_shift: 0, blocks }
    }

    /// Block from source degree `n`, zero if absent.
    pub fn block(&self, n: i32) -> Matrix {
        self.blocks
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.dim(n + self.degree_shift), self.source.dim(n)))
    }

    pub fn block_ref(&self, n: i32) -> Option<&Matrix> {
        self.blocks.get(&n)
    }

    pub fn blocks(&self) -> &BTreeMap<i32, Matrix> {
        &self.blocks
    }

    /// Applies the map to a global coordinate vector of the source.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.source.total_dim());
        let mut out = vec![Scalar::zero(); self.target.total_dim()];
        for (&n, b) in &self.blocks {
            let x = self.source.component(v, n);
            if x.iter().all(Zero::is_zero) {
                continue;
            }
            let y = b.apply(x);
            let o = self.target.offset(n + self.degree_shift);
            for (i, yi) in y.into_iter().enumerate() {
                out[o + i] += yi;
            }
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LinearMap) -> LinearMap {
        assert_eq!(first.target, self.source, "composition of incompatible maps");
        let mut blocks = BTreeMap::new();
        for (&n, b) in &first.blocks {
            if let Some(a) = self.blocks.get(&(n + first.degree_shift)) {
                blocks.insert(n, a.mul(b));
            }
        }
        LinearMap::new(
            first.source.clone(),
            self.target.clone(),
            first.degree_shift + self.degree_shift,
            blocks,
        )
        .expect("composed block shapes are consistent")
    }

    /// Splits a dense global matrix into blocks; entries outside the blocks of the given
    /// shift are an error.
    pub fn from_global(source: GradedSpace, target: GradedSpace, degree_shift: i32, m: &Matrix) -> Result<Self> {
        if m.shape() != (target.total_dim(), source.total_dim()) {
            return Err(Error::shape("global matrix does not match the spaces"));
        }
        let mut blocks = BTreeMap::new();
        let mut covered = 0usize;
        for n in source.degrees().collect::<Vec<_>>() {
            let (r, c) = (target.dim(n + degree_shift), source.dim(n));
            if r == 0 {
                continue;
            }
            let (ro, co) = (target.offset(n + degree_shift), source.offset(n));
            let mut b = Matrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    b[(i, j)] = m[(ro + i, co + j)].clone();
                    if !b[(i, j)].is_zero() {
                        covered += 1;
                    }
                }
            }
            blocks.insert(n, b);
        }
        let nonzero = (0..m.rows()).map(|i| m.row(i).iter().filter(|x| !x.is_zero()).count()).sum::<usize>();
        if nonzero != covered {
            return Err(Error::input(format!("map does not have degree {degree_shift}")));
        }
        LinearMap::new(source, target, degree_shift, blocks)
    }

    /// Dense matrix on global coordinates.
    pub fn to_global(&self) -> Matrix {
        let mut m = Matrix::zeros(self.target.total_dim(), self.source.total_dim());
        for (&n, b) in &self.blocks {
            let ro = self.target.offset(n + self.degree_shift);
            let co = self.source.offset(n);
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    m[(ro + i, co + j)] = b[(i, j)].clone();
                }
            }
        }
        m
    }

    pub fn equals(&self, other: &LinearMap) -> bool {
        self.degree_shift == other.degree_shift && self.blocks == other.blocks
    }
}
