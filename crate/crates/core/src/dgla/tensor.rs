use num_traits::Zero;

use super::bch::LieOps;
use super::Dgla;
use crate::defart::ArtinAlgebra;
use crate::homalg::{vec_is_zero, Scalar};
use crate::{Error, Result};

/// Element of `L ⊗ m_A`: one column of global `L`-coordinates per basis element of `m_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub columns: Vec<Vec<Scalar>>,
}

impl TensorElement {
    pub fn zero(l: &Dgla, a: &ArtinAlgebra) -> Self {
        TensorElement { columns: vec![vec![Scalar::zero(); l.dim()]; a.dim()] }
    }

    /// `x ⊗ b_j`.
    pub fn simple(l: &Dgla, a: &ArtinAlgebra, x: &[Scalar], j: usize) -> Self {
        let mut t = TensorElement::zero(l, a);
        t.columns[j] = x.to_vec();
        t
    }

    /// Builds from `(L label, m_A label, coefficient)` triples, requiring every `L` label
    /// to have degree `degree`.
    pub fn from_entries(
        l: &Dgla,
        a: &ArtinAlgebra,
        degree: i32,
        entries: &[(String, String, Scalar)],
    ) -> Result<Self> {
        let mut t = TensorElement::zero(l, a);
        for (x, m, c) in entries {
            let i = l
                .space()
                .index_of(x)
                .ok_or_else(|| Error::input(format!("unknown basis label {x:?}")))?;
            if l.space().degree_of(i) != degree {
                return Err(Error::input(format!(
                    "{x:?} has degree {}, expected {degree}",
                    l.space().degree_of(i)
                )));
            }
            let j = a.index_of(m).ok_or_else(|| Error::input(format!("unknown algebra label {m:?}")))?;
            t.columns[j][i] += c;
        }
        Ok(t)
    }

    /// Nonzero coordinates as `(L label, m_A label, coefficient)`.
    pub fn entries(&self, l: &Dgla, a: &ArtinAlgebra) -> Vec<(String, String, Scalar)> {
        let mut out = Vec::new();
        for i in 0..l.dim() {
            for (j, col) in self.columns.iter().enumerate() {
                if !col[i].is_zero() {
                    out.push((l.space().label(i).to_string(), a.labels()[j].clone(), col[i].clone()));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| vec_is_zero(c))
    }

    /// The single degree all nonzero coordinates live in, if any.
    pub fn degree(&self, l: &Dgla) -> Option<i32> {
        let mut deg = None;
        for c in &self.columns {
            if let Some(d) = l.space().homogeneous_degree(c) {
                if deg.is_some_and(|e| e != d) {
                    return None;
                }
                deg = Some(d);
            } else if !vec_is_zero(c) {
                return None;
            }
        }
        deg
    }

    /// Whether every coordinate lies in degree `degree` (zero qualifies).
    pub fn is_homogeneous_of(&self, l: &Dgla, degree: i32) -> bool {
        let s = l.space();
        self.columns
            .iter()
            .all(|c| c.iter().enumerate().all(|(i, x)| x.is_zero() || s.degree_of(i) == degree))
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        TensorElement { columns }
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.scale(&-Scalar::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let columns = self.columns.iter().map(|a| a.iter().map(|x| x * c).collect()).collect();
        TensorElement { columns }
    }

    /// `d ⊗ id`.
    pub fn d(&self, l: &Dgla) -> TensorElement {
        TensorElement { columns: self.columns.iter().map(|c| l.d(c)).collect() }
    }

    /// `[x ⊗ a, y ⊗ b] = [x, y] ⊗ ab`.
    pub fn bracket(&self, l: &Dgla, a: &ArtinAlgebra, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(l, a);
        if l.is_abelian() {
            return out;
        }
        for (i, x) in self.columns.iter().enumerate() {
            if vec_is_zero(x) {
                continue;
            }
            for (j, y) in other.columns.iter().enumerate() {
                let prod = a.product(i, j);
                if vec_is_zero(prod) || vec_is_zero(y) {
                    continue;
                }
                let br = l.bracket(x, y);
                if vec_is_zero(&br) {
                    continue;
                }
                for (k, c) in prod.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (o, b) in out.columns[k].iter_mut().zip(&br) {
                        *o += c * b;
                    }
                }
            }
        }
        out
    }

    /// Applies a linear map to every column.
    pub fn map(&self, f: impl Fn(&[Scalar]) -> Vec<Scalar>) -> TensorElement {
        TensorElement { columns: self.columns.iter().map(|c| f(c)).collect() }
    }

    /// Keeps only the coefficients on `m_A` basis elements of the given levels.
    pub fn restrict_levels(&self, a: &ArtinAlgebra, keep: impl Fn(usize) -> bool) -> TensorElement {
        let columns = self
            .columns
            .iter()
            .zip(a.levels())
            .map(|(c, &lv)| if keep(lv) { c.clone() } else { vec![Scalar::zero(); c.len()] })
            .collect();
        TensorElement { columns }
    }
}

/// `L ⊗ m_A` as a nilpotent Lie algebra (used on degree-0 elements).
pub struct TensorLie<'a> {
    pub dgla: &'a Dgla,
    pub artin: &'a ArtinAlgebra,
}

impl LieOps for TensorLie<'_> {
    type Elem = TensorElement;

    fn add(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        x.add(y)
    }

    fn scale(&self, x: &TensorElement, c: &Scalar) -> TensorElement {
        x.scale(c)
    }

    fn bracket(&self, x: &TensorElement, y: &TensorElement) -> TensorElement {
        x.bracket(self.dgla, self.artin, y)
    }

    fn is_zero(&self, x: &TensorElement) -> bool {
        x.is_zero()
    }
}
