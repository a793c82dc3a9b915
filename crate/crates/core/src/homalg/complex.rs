use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::graded::{GradedSpace, LinearMap};
use super::matrix::{extend_basis, kernel_basis, solve, vec_is_zero, Matrix, SolveOutcome};
use super::scalar::Scalar;
use crate::{Error, Result};

/// Graded space with a square-zero differential of degree +1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    space: GradedSpace,
    differential: LinearMap,
}

impl CochainComplex {
    pub fn new(space: GradedSpace, differential: LinearMap) -> Result<Self> {
        if differential.degree_shift != 1 {
            return Err(Error::input(format!(
                "differential has degree {}, expected +1",
                differential.degree_shift
            )));
        }
        if differential.source != space || differential.target != space {
            return Err(Error::shape("differential does not act on the given space"));
        }
        for (&n, b) in differential.blocks() {
            if let Some(next) = differential.block_ref(n + 1) {
                if !next.mul(b).is_zero() {
                    return Err(Error::input(format!("d∘d is nonzero on degree {n}")));
                }
            }
        }
        Ok(CochainComplex { space, differential })
    }

    /// Builds a complex from degree-indexed blocks `d^n : C^n → C^{n+1}`.
    pub fn from_blocks(space: GradedSpace, blocks: BTreeMap<i32, Matrix>) -> Result<Self> {
        let d = LinearMap::new(space.clone(), space.clone(), 1, blocks)?;
        CochainComplex::new(space, d)
    }

    pub fn zero_differential(space: GradedSpace) -> Self {
        let d = LinearMap::zero(space.clone(), space.clone(), 1);
        CochainComplex { space, differential: d }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn differential(&self) -> &LinearMap {
        &self.differential
    }

    /// `d^n` as a `dim C^{n+1} × dim C^n` matrix.
    pub fn d(&self, n: i32) -> Matrix {
        self.differential.block(n)
    }

    pub fn apply_d(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.differential.apply(v)
    }

    /// Degrees where the complex or its cohomology may be nonzero.
    pub fn degrees(&self) -> Vec<i32> {
        self.space.degrees().collect()
    }

    pub fn cohomology(&self, n: i32) -> CohomologyPresentation {
        CohomologyPresentation::compute(self, n)
    }

    pub fn betti(&self, n: i32) -> usize {
        let dim = self.space.dim(n);
        if dim == 0 {
            return 0;
        }
        dim - self.d(n).rank() - self.d(n - 1).rank()
    }

    /// Cohomology dimensions in every degree with nonzero cohomology.
    pub fn betti_numbers(&self) -> BTreeMap<i32, usize> {
        self.space
            .degrees()
            .map(|n| (n, self.betti(n)))
            .filter(|&(_, b)| b > 0)
            .collect()
    }

    /// Whether a local vector in degree `n` is a coboundary.
    pub fn is_coboundary(&self, n: i32, v: &[Scalar]) -> bool {
        if vec_is_zero(v) {
            return true;
        }
        matches!(solve(&self.d(n - 1), v), Ok(SolveOutcome::Solved(_)))
    }
}

/// `Hⁿ` of a complex, with chosen cycle representatives and a projection from cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyPresentation {
    pub degree: i32,
    pub dimension: usize,
    /// Cycles in local coordinates of `Cⁿ` whose classes form a basis of `Hⁿ`.
    pub representatives: Vec<Vec<Scalar>>,
    /// `dimension × dim Cⁿ` matrix sending a cycle to its class coordinates.
    /// Values on non-cycles are meaningless.
    pub projection: Matrix,
    /// Basis of the coboundaries `im dⁿ⁻¹`.
    pub boundaries: Vec<Vec<Scalar>>,
}

impl CohomologyPresentation {
    fn compute(c: &CochainComplex, n: i32) -> Self {
        let dim = c.space.dim(n);
        let d_in = c.d(n - 1);
        let cycles = kernel_basis(&c.d(n));
        let image_cols = d_in.columns();
        let boundary_idx = extend_basis(&[], &image_cols, dim);
        let boundaries: Vec<Vec<Scalar>> =
            boundary_idx.iter().map(|&i| image_cols[i].clone()).collect();
        let rep_idx = extend_basis(&boundaries, &cycles, dim);
        let representatives: Vec<Vec<Scalar>> =
            rep_idx.iter().map(|&i| cycles[i].clone()).collect();

        let mut frame = boundaries.clone();
        frame.extend(representatives.iter().cloned());
        let std: Vec<Vec<Scalar>> = (0..dim)
            .map(|i| {
                let mut e = vec![Scalar::zero(); dim];
                e[i] = Scalar::one();
                e
            })
            .collect();
        for i in extend_basis(&frame, &std, dim) {
            frame.push(std[i].clone());
        }
        let inv = Matrix::from_columns(&frame, dim)
            .inverse()
            .expect("completed basis is invertible");
        let b = boundaries.len();
        let h = representatives.len();
        let rows: Vec<Vec<Scalar>> = (b..b + h).map(|i| inv.row(i).to_vec()).collect();
        let projection = Matrix::from_rows(rows, dim).expect("rows have length dim");

        CohomologyPresentation {
            degree: n,
            dimension: h,
            representatives,
            projection,
            boundaries,
        }
    }

    /// Class coordinates of a cycle.
    pub fn classify(&self, cycle: &[Scalar]) -> Vec<Scalar> {
        self.projection.apply(cycle)
    }

    /// A cycle representing the class with the given coordinates.
    pub fn lift(&self, class: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(class.len(), self.dimension);
        let dim = self.projection.cols();
        let mut v = vec![Scalar::zero(); dim];
        for (c, r) in class.iter().zip(&self.representatives) {
            if c.is_zero() {
                continue;
            }
            for (vi, ri) in v.iter_mut().zip(r) {
                *vi += c * ri;
            }
        }
        v
    }
}

/// Degree-0 map between complexes, given by one block per source degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: CochainComplex,
    pub target: CochainComplex,
    pub map: LinearMap,
}

/// Per-degree comparison of cohomology under a chain map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub source_dim: usize,
    pub target_dim: usize,
    pub induced_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoReport {
    pub is_quasi_iso: bool,
    pub degrees: BTreeMap<i32, DegreeReport>,
}

impl ChainMap {
    /// Checks `f∘d = d∘f` in every degree; the error names the first failing degree.
    pub fn new(source: CochainComplex, target: CochainComplex, map: LinearMap) -> Result<Self> {
        if map.degree_shift != 0 {
            return Err(Error::input("chain map must have degree 0"));
        }
        if map.source != source.space || map.target != target.space {
            return Err(Error::shape("chain map does not match the given complexes"));
        }
        let degrees: BTreeSet<i32> =
            source.space.degrees().chain(target.space.degrees()).collect();
        for &n in &degrees {
            let lhs = map.block(n + 1).mul(&source.d(n));
            let rhs = target.d(n).mul(&map.block(n));
            if lhs != rhs {
                return Err(Error::input(format!(
                    "map does not commute with the differentials in degree {n}"
                )));
            }
        }
        Ok(ChainMap { source, target, map })
    }

    pub fn identity(c: &CochainComplex) -> Self {
        ChainMap { source: c.clone(), target: c.clone(), map: LinearMap::identity(&c.space) }
    }

    /// Matrix of `Hⁿ(f)` in the chosen cohomology bases.
    pub fn induced(&self, n: i32) -> Matrix {
        let hs = self.source.cohomology(n);
        let ht = self.target.cohomology(n);
        let f = self.map.block(n);
        let cols: Vec<Vec<Scalar>> =
            hs.representatives.iter().map(|r| ht.classify(&f.apply(r))).collect();
        Matrix::from_columns(&cols, ht.dimension)
    }

    pub fn quasi_iso_report(&self) -> QuasiIsoReport {
        let degrees: BTreeSet<i32> =
            self.source.space.degrees().chain(self.target.space.degrees()).collect();
        let mut out = BTreeMap::new();
        let mut ok = true;
        for n in degrees {
            let m = self.induced(n);
            let rep = DegreeReport {
                source_dim: m.cols(),
                target_dim: m.rows(),
                induced_rank: if m.rows() == 0 || m.cols() == 0 { 0 } else { m.rank() },
            };
            if rep.source_dim != rep.target_dim || rep.induced_rank != rep.source_dim {
                ok = false;
            }
            out.insert(n, rep);
        }
        QuasiIsoReport { is_quasi_iso: ok, degrees: out }
    }
}

/// Checks that `f` is a chain map and reports whether it is a quasi-isomorphism.
pub fn is_quasi_iso(
    source: &CochainComplex,
    target: &CochainComplex,
    map: &LinearMap,
) -> Result<QuasiIsoReport> {
    Ok(ChainMap::new(source.clone(), target.clone(), map.clone())?.quasi_iso_report())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::scalar::int;

    fn space(dims: &[(i32, usize)]) -> GradedSpace {
        GradedSpace::from_dims(&dims.iter().copied().collect(), "e")
    }

    pub(crate) fn circle() -> CochainComplex {
        let s = space(&[(0, 3), (1, 3)]);
        // edges 01, 02, 12
        let d0 = Matrix::from_i64(3, 3, &[-1, 1, 0, -1, 0, 1, 0, -1, 1]);
        CochainComplex::from_blocks(s, [(0, d0)].into()).unwrap()
    }

    #[test]
    fn zero_differential_cohomology_is_everything() {
        let c = CochainComplex::zero_differential(space(&[(2, 4)]));
        let h = c.cohomology(2);
        assert_eq!(h.dimension, 4);
    }

    #[test]
    fn isomorphism_is_acyclic() {
        let c = CochainComplex::from_blocks(space(&[(0, 1), (1, 1)]), [(0, Matrix::identity(1))].into())
            .unwrap();
        assert_eq!(c.cohomology(0).dimension, 0);
        assert_eq!(c.cohomology(1).dimension, 0);
    }

    #[test]
    fn circle_cohomology() {
        let c = circle();
        let h0 = c.cohomology(0);
        let h1 = c.cohomology(1);
        assert_eq!((h0.dimension, h1.dimension), (1, 1));
        assert!(vec_is_zero(&c.d(0).apply(&h0.representatives[0])));
        let cls = h1.classify(&h1.representatives[0]);
        assert_eq!(cls, vec![int(1)]);
        for b in &h1.boundaries {
            assert!(vec_is_zero(&h1.classify(b)));
        }
    }

    #[test]
    fn rejects_nonzero_square() {
        let s = space(&[(0, 1), (1, 1), (2, 1)]);
        let r = CochainComplex::from_blocks(s, [(0, Matrix::identity(1)), (1, Matrix::identity(1))].into());
        assert!(r.is_err());
    }

    #[test]
    fn identity_is_quasi_iso() {
        let c = circle();
        assert!(ChainMap::identity(&c).quasi_iso_report().is_quasi_iso);
    }

    #[test]
    fn zero_map_between_acyclic_complexes() {
        let a = CochainComplex::from_blocks(space(&[(0, 1), (1, 1)]), [(0, Matrix::identity(1))].into())
            .unwrap();
        let z = LinearMap::zero(a.space().clone(), a.space().clone(), 0);
        assert!(is_quasi_iso(&a, &a, &z).unwrap().is_quasi_iso);
    }

    #[test]
    fn non_chain_map_names_degree() {
        let c = circle();
        let f = LinearMap::new(
            c.space().clone(),
            c.space().clone(),
            0,
            [(0, Matrix::identity(3))].into(),
        )
        .unwrap();
        let err = is_quasi_iso(&c, &c, &f).unwrap_err();
        assert!(err.to_string().contains("degree 0"), "{err}");
    }
}
