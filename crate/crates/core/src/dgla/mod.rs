//! DG Lie algebras: axiom checks, cohomology brackets, BCH product, gauge action and
//! cyclic pairings.

mod bch;
mod endo;
mod gauge;
mod pairing;
mod product;
mod tensor;

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::homalg::{CochainComplex, CohomologyPresentation, GradedSpace, LinearMap, Matrix, Scalar};
use crate::{Error, Result};

pub use bch::{bch, bch_coefficients, LieOps, MatrixLie};
pub use gauge::gauge_act;
pub use pairing::{check_cyclic_pairing, CyclicPairing, PairingReport};
pub use tensor::{TensorElement, TensorLie};

/// Sparse structure constants: `[e_i, e_j] = Σ c_k e_k`.
type Table = HashMap<(usize, usize), Vec<(usize, Scalar)>>;

/// `[x, y] = value` on basis labels, with the value given as `(label, coefficient)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    pub x: String,
    pub y: String,
    pub value: Vec<(String, Scalar)>,
}

/// Unvalidated DGLA data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDgla {
    pub space: GradedSpace,
    /// `dⁿ` blocks; missing means zero.
    pub differential: BTreeMap<i32, Matrix>,
    pub brackets: Vec<BracketEntry>,
}

/// A violated identity with the basis labels that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub witness: Vec<String>,
    /// Nonzero defect `lhs − rhs`, as `(label, coefficient)` pairs.
    pub defect: Vec<(String, Scalar)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dgla {
    complex: CochainComplex,
    table: Table,
}

fn sign(even: bool) -> Scalar {
    if even {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

fn labelled(space: &GradedSpace, v: &[Scalar]) -> Vec<(String, Scalar)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (space.label(i).to_string(), c.clone()))
        .collect()
}

/// Validates shapes and checks every axiom on basis elements.
///
/// Shape problems (unknown labels, values of the wrong degree, bad block sizes) are
/// errors; failed identities are reported with witnesses.
pub fn check_axioms(raw: &RawDgla) -> Result<AxiomReport> {
    Ok(assemble(raw)?.1)
}

fn assemble(raw: &RawDgla) -> Result<(Dgla, AxiomReport)> {
    let space = &raw.space;
    let d = LinearMap::new(space.clone(), space.clone(), 1, raw.differential.clone())?;
    let mut report = AxiomReport::default();
    let mut table: Table = HashMap::new();
    let lookup = |l: &str| {
        space.index_of(l).ok_or_else(|| Error::input(format!("unknown basis label {l:?}")))
    };
    for e in &raw.brackets {
        let (i, j) = (lookup(&e.x)?, lookup(&e.y)?);
        let (p, q) = (space.degree_of(i), space.degree_of(j));
        let mut v = vec![Scalar::zero(); space.total_dim()];
        for (l, c) in &e.value {
            let k = lookup(l)?;
            if space.degree_of(k) != p + q {
                return Err(Error::shape(format!(
                    "[{}, {}] has a component on {l:?} of degree {}, expected degree {}",
                    e.x,
                    e.y,
                    space.degree_of(k),
                    p + q
                )));
            }
            v[k] += c;
        }
        let fwd: Vec<(usize, Scalar)> =
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect();
        let s = -sign((p * q) % 2 == 0);
        let bwd: Vec<(usize, Scalar)> = fwd.iter().map(|(k, c)| (*k, c * &s)).collect();
        if i == j {
            if !fwd.is_empty() && p % 2 == 0 {
                report.violations.push(Violation {
                    identity: "antisymmetry".into(),
                    witness: vec![e.x.clone(), e.y.clone()],
                    defect: labelled(space, &v.iter().map(|c| c * Scalar::from_integer(2.into())).collect::<Vec<_>>()),
                });
                continue;
            }
        }
        for ((a, b), val) in [((i, j), fwd), ((j, i), bwd)] {
            match table.get(&(a, b)) {
                Some(prev) if *prev != val => {
                    let mut diff = vec![Scalar::zero(); space.total_dim()];
                    for (k, c) in prev {
                        diff[*k] += c;
                    }
                    for (k, c) in &val {
                        diff[*k] -= c;
                    }
                    report.violations.push(Violation {
                        identity: "antisymmetry".into(),
                        witness: vec![space.label(a).into(), space.label(b).into()],
                        defect: labelled(space, &diff),
                    });
                    break;
                }
                _ => {
                    if val.is_empty() {
                        table.remove(&(a, b));
                    } else {
                        table.insert((a, b), val);
                    }
                }
            }
        }
    }
    let n = space.total_dim();
    for (&deg, b) in d.blocks() {
        if let Some(next) = d.block_ref(deg + 1) {
            let dd = next.mul(b);
            for c in 0..dd.cols() {
                let col = dd.column(c);
                if col.iter().any(|x| !x.is_zero()) {
                    let src = space.offset(deg) + c;
                    let full = space.embed(deg + 2, &col);
                    report.violations.push(Violation {
                        identity: "d_squared".into(),
                        witness: vec![space.label(src).into()],
                        defect: labelled(space, &full),
                    });
                }
            }
        }
    }
    let complex = if report.violations.iter().any(|v| v.identity == "d_squared") {
        None
    } else {
        Some(CochainComplex::new(space.clone(), d.clone())?)
    };
    let dgla = Dgla {
        complex: complex.unwrap_or_else(|| CochainComplex::zero_differential(space.clone())),
        table,
    };
    let basis = |i: usize| {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    };
    // Leibniz: d[x,y] = [dx,y] + (−1)^p [x,dy]
    for i in 0..n {
        let p = space.degree_of(i);
        let dx = d.apply(&basis(i));
        for j in 0..n {
            let dy = d.apply(&basis(j));
            let lhs = d.apply(&dgla.bracket_basis_vec(i, j));
            let mut rhs = dgla.bracket(&dx, &basis(j));
            let t = dgla.bracket(&basis(i), &dy);
            let s = sign(p % 2 == 0);
            for (r, x) in rhs.iter_mut().zip(t) {
                *r += &s * x;
            }
            let diff: Vec<Scalar> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            if diff.iter().any(|x| !x.is_zero()) {
                report.violations.push(Violation {
                    identity: "leibniz".into(),
                    witness: vec![space.label(i).into(), space.label(j).into()],
                    defect: labelled(space, &diff),
                });
            }
        }
    }
    // Jacobi: [x,[y,z]] = [[x,y],z] + (−1)^{pq} [y,[x,z]]
    for i in 0..n {
        let p = space.degree_of(i);
        for j in 0..n {
            let q = space.degree_of(j);
            let xy = dgla.bracket_basis_vec(i, j);
            for k in 0..n {
                let yz = dgla.bracket_basis_vec(j, k);
                let xz = dgla.bracket_basis_vec(i, k);
                if yz.iter().all(Zero::is_zero)
                    && xz.iter().all(Zero::is_zero)
                    && xy.iter().all(Zero::is_zero)
                {
                    continue;
                }
                let lhs = dgla.bracket(&basis(i), &yz);
                let a = dgla.bracket(&xy, &basis(k));
                let b = dgla.bracket(&basis(j), &xz);
                let s = sign((p * q) % 2 == 0);
                let diff: Vec<Scalar> =
                    lhs.iter().zip(a.iter().zip(&b)).map(|(l, (a, b))| l - a - &s * b).collect();
                if diff.iter().any(|x| !x.is_zero()) {
                    report.violations.push(Violation {
                        identity: "jacobi".into(),
                        witness: vec![space.label(i).into(), space.label(j).into(), space.label(k).into()],
                        defect: labelled(space, &diff),
                    });
                }
            }
        }
    }
    Ok((dgla, report))
}

impl Dgla {
    /// Validates and builds; any violated axiom is an input error naming the first witness.
    pub fn new(raw: &RawDgla) -> Result<Self> {
        let (dgla, report) = assemble(raw)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::input(format!(
                "{} fails on ({}) ({} violations in total)",
                v.identity,
                v.witness.join(", "),
                report.violations.len()
            )));
        }
        Ok(dgla)
    }

    /// Abelian DGLA on a complex.
    pub fn abelian(complex: CochainComplex) -> Self {
        Dgla { complex, table: HashMap::new() }
    }

    /// Builds from a full table without checking axioms. Both orders of every pair must
    /// already be present.
    pub(crate) fn new_unchecked(complex: CochainComplex, table: HashMap<(usize, usize), Vec<(usize, Scalar)>>) -> Self {
        Dgla { complex, table }
    }

    /// Re-runs all axiom checks.
    pub fn check(&self) -> AxiomReport {
        assemble(&self.to_raw()).map(|(_, r)| r).unwrap_or_default()
    }

    pub fn to_raw(&self) -> RawDgla {
        let space = self.space();
        let mut keys: Vec<&(usize, usize)> = self.table.keys().filter(|(i, j)| i <= j).collect();
        keys.sort();
        let brackets = keys
            .into_iter()
            .map(|&(i, j)| BracketEntry {
                x: space.label(i).into(),
                y: space.label(j).into(),
                value: self.table[&(i, j)].iter().map(|(k, c)| (space.label(*k).into(), c.clone())).collect(),
            })
            .collect();
        RawDgla {
            space: space.clone(),
            differential: self.complex.differential().blocks().clone(),
            brackets,
        }
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn space(&self) -> &GradedSpace {
        self.complex.space()
    }

    pub fn dim(&self) -> usize {
        self.space().total_dim()
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_empty()
    }

    /// `[e_i, e_j]` as sparse coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.table.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    fn bracket_basis_vec(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (k, c) in self.bracket_basis(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        if self.table.is_empty() {
            return out;
        }
        let xs: Vec<(usize, &Scalar)> = x.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let ys: Vec<(usize, &Scalar)> = y.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for &(i, a) in &xs {
            for &(j, b) in &ys {
                if let Some(v) = self.table.get(&(i, j)) {
                    let ab = a * b;
                    for (k, c) in v {
                        out[*k] += &ab * c;
                    }
                }
            }
        }
        out
    }

    pub fn d(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.complex.apply_d(x)
    }

    /// Embeds a degree-local vector into global coordinates.
    pub fn embed(&self, degree: i32, local: &[Scalar]) -> Vec<Scalar> {
        self.space().embed(degree, local)
    }

    pub fn cohomology(&self, n: i32) -> CohomologyPresentation {
        self.complex.cohomology(n)
    }

    pub fn cohomology_bracket(&self) -> CohomologyAlgebra {
        CohomologyAlgebra::compute(self)
    }
}

/// `H(L)` with its induced bracket, together with the presentations used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyAlgebra {
    /// Graded Lie algebra with zero differential.
    pub algebra: Dgla,
    pub presentations: BTreeMap<i32, CohomologyPresentation>,
}

impl CohomologyAlgebra {
    fn compute(l: &Dgla) -> Self {
        let space = l.space();
        let mut presentations = BTreeMap::new();
        let mut labels: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        for n in space.degrees().collect::<Vec<_>>() {
            let h = l.cohomology(n);
            if h.dimension == 0 {
                continue;
            }
            let ls = h
                .representatives
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let nz: Vec<usize> = (0..r.len()).filter(|&k| !r[k].is_zero()).collect();
                    if nz.len() == 1 && r[nz[0]].is_one() {
                        format!("[{}]", space.labels(n)[nz[0]])
                    } else {
                        format!("H{n}_{i}")
                    }
                })
                .collect();
            labels.insert(n, ls);
            presentations.insert(n, h);
        }
        let hspace = GradedSpace::new(labels).expect("cohomology labels are distinct");
        let mut table: Table = HashMap::new();
        for (&p, hp) in &presentations {
            for (&q, hq) in &presentations {
                let Some(hpq) = presentations.get(&(p + q)) else { continue };
                for (a, ra) in hp.representatives.iter().enumerate() {
                    for (b, rb) in hq.representatives.iter().enumerate() {
                        let br = l.bracket(&l.embed(p, ra), &l.embed(q, rb));
                        let cls = hpq.classify(space.component(&br, p + q));
                        let o = hspace.offset(p + q);
                        let v: Vec<(usize, Scalar)> = cls
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(k, c)| (o + k, c))
                            .collect();
                        if !v.is_empty() {
                            table.insert((hspace.offset(p) + a, hspace.offset(q) + b), v);
                        }
                    }
                }
            }
        }
        let algebra = Dgla::new_unchecked(CochainComplex::zero_differential(hspace), table);
        CohomologyAlgebra { algebra, presentations }
    }

    pub fn is_abelian(&self) -> bool {
        self.algebra.is_abelian()
    }
}

/// Degree-0 map between DGLAs commuting with differentials and brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DglaMorphism {
    pub source: Dgla,
    pub target: Dgla,
    pub map: LinearMap,
}

impl DglaMorphism {
    /// Checks the morphism conditions on all basis elements and pairs. `name` is used in
    /// error messages.
    pub fn new(name: &str, source: Dgla, target: Dgla, map: LinearMap) -> Result<Self> {
        if map.degree_shift != 0 || map.source != *source.space() || map.target != *target.space() {
            return Err(Error::shape(format!("{name}: map does not fit the algebras")));
        }
        let m = DglaMorphism { source, target, map };
        if let Some(why) = m.failure() {
            return Err(Error::input(format!("{name} is not a DGLA morphism: {why}")));
        }
        Ok(m)
    }

    /// First failing condition, if any.
    pub fn failure(&self) -> Option<String> {
        morphism_failure(&self.source, &self.target, &self.map)
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.map.apply(x)
    }
}

/// First failing morphism condition for a degree-0 map, if any.
pub fn morphism_failure(source: &Dgla, target: &Dgla, map: &LinearMap) -> Option<String> {
    let s = source.space();
    let n = s.total_dim();
    let images: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut e = vec![Scalar::zero(); n];
            e[i] = Scalar::one();
            map.apply(&e)
        })
        .collect();
    for i in 0..n {
        let mut e = vec![Scalar::zero(); n];
        e[i] = Scalar::one();
        if map.apply(&source.d(&e)) != target.d(&images[i]) {
            return Some(format!("does not commute with d on {}", s.label(i)));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if source.bracket_basis(i, j).is_empty() && (images[i].iter().all(Zero::is_zero) || images[j].iter().all(Zero::is_zero)) {
                continue;
            }
            let lhs = map.apply(&source.bracket_basis_vec(i, j));
            let rhs = target.bracket(&images[i], &images[j]);
            if lhs != rhs {
                return Some(format!("does not preserve [{}, {}]", s.label(i), s.label(j)));
            }
        }
    }
    None
}


#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::homalg::scalar::int;

    #[test]
    fn zero_bracket_is_valid() {
        let raw = RawDgla {
            space: space(&[(0, &["a"]), (1, &["b", "c"])]),
            differential: [(0, Matrix::from_i64(2, 1, &[1, 0]))].into(),
            brackets: vec![],
        };
        assert!(check_axioms(&raw).unwrap().is_valid());
    }

    #[test]
    fn obstructed_example_is_valid() {
        assert!(obstructed().check().is_valid());
    }

    #[test]
    fn wrong_degree_value_is_shape_error() {
        let raw = RawDgla {
            space: space(&[(1, &["e"]), (2, &["f"])]),
            differential: BTreeMap::new(),
            brackets: vec![entry("e", "e", &[("f", 1)]), entry("e", "f", &[("e", 1)])],
        };
        assert!(matches!(check_axioms(&raw), Err(Error::Shape(_))));
    }

    #[test]
    fn jacobi_violation_has_witness() {
        // [h,x] = x, [h,y] = y, [x,y] = h
        let raw = RawDgla {
            space: space(&[(0, &["h", "x", "y"])]),
            differential: BTreeMap::new(),
            brackets: vec![entry("h", "x", &[("x", 1)]), entry("h", "y", &[("y", 1)]), entry("x", "y", &[("h", 1)])],
        };
        let r = check_axioms(&raw).unwrap();
        assert!(r.violations.iter().any(|v| v.identity == "jacobi" && v.witness.len() == 3));
    }

    #[test]
    fn even_self_bracket_violates_antisymmetry() {
        let raw = RawDgla {
            space: space(&[(0, &["a"])]),
            differential: BTreeMap::new(),
            brackets: vec![entry("a", "a", &[("a", 1)])],
        };
        let r = check_axioms(&raw).unwrap();
        assert_eq!(r.violations[0].identity, "antisymmetry");
    }

    #[test]
    fn leibniz_violation_detected() {
        // da = e, [a,b] = a, [e,b] = 0
        let raw = RawDgla {
            space: space(&[(0, &["a", "b"]), (1, &["e"])]),
            differential: [(0, Matrix::from_i64(1, 2, &[1, 0]))].into(),
            brackets: vec![entry("a", "b", &[("a", 1)])],
        };
        let r = check_axioms(&raw).unwrap();
        assert!(r.violations.iter().any(|v| v.identity == "leibniz"));
    }

    #[test]
    fn cohomology_bracket_examples() {
        let h = obstructed().cohomology_bracket();
        let a = &h.algebra;
        assert_eq!(a.space().labels(1), ["[e]"]);
        assert_eq!(a.space().labels(2), ["[f]"]);
        assert_eq!(a.bracket_basis(0, 0), [(1, int(1))]);
        assert!(acyclic().cohomology_bracket().algebra.dim() == 0);
        assert!(sl2().cohomology_bracket().algebra.check().is_valid());
    }

    #[test]
    fn morphism_checks() {
        let l = sl2();
        let id = LinearMap::identity(l.space());
        assert!(DglaMorphism::new("id", l.clone(), l.clone(), id).is_ok());
        let scale = LinearMap::new(l.space().clone(), l.space().clone(), 0, [(0, Matrix::identity(3).scale(&int(2)))].into())
            .unwrap();
        let err = DglaMorphism::new("twice", l.clone(), l, scale).unwrap_err();
        assert!(err.to_string().contains("twice"));
    }
}
