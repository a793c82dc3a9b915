use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::brauer::BrauerCocycle;
use super::bundle::{Gluing, TwistedComplex};
use super::nerve::RingedNerve;
use crate::dgla::Dgla;
use crate::homalg::{AlgMatrix, CochainComplex, CommAlgebra, GradedSpace, LinearMap, Matrix, Scalar};
use crate::scosim::SemicosimplicialDgla;
use crate::Result;

/// Bracket used on endomorphisms. `Anticommutator` replaces `φψ − ψφ` by `φψ + ψφ`
/// and exists only as a deliberately wrong variant for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

/// Coordinates of `End_A(E)` for `E = A^r` graded by `degrees`: basis `E_{ts} ⊗ b`.
#[derive(Clone, Debug)]
pub struct EndBasis {
    rank: usize,
    alg_dim: usize,
    space: GradedSpace,
    /// `(t, s, b)` to global index.
    index: HashMap<(usize, usize, usize), usize>,
    /// global index to `(t, s, b)`
    entries: Vec<(usize, usize, usize)>,
}

impl EndBasis {
    pub fn new(alg: &CommAlgebra, degrees: &[i32]) -> Self {
        let r = degrees.len();
        let mut labels: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        let mut keys: BTreeMap<i32, Vec<(usize, usize, usize)>> = BTreeMap::new();
        for t in 0..r {
            for s in 0..r {
                for b in 0..alg.dim() {
                    let p = degrees[t] - degrees[s];
                    let label = if alg.dim() == 1 {
                        format!("v{t}<-v{s}")
                    } else {
                        format!("v{t}<-v{s}*{}", alg.labels()[b])
                    };
                    labels.entry(p).or_default().push(label);
                    keys.entry(p).or_default().push((t, s, b));
                }
            }
        }
        let space = GradedSpace::new(labels).expect("endomorphism labels are distinct");
        let entries: Vec<(usize, usize, usize)> = keys.into_values().flatten().collect();
        let index = entries.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        EndBasis { rank: r, alg_dim: alg.dim(), space, index, entries }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn to_vec(&self, m: &AlgMatrix) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.entries.len()];
        for t in 0..self.rank {
            for s in 0..self.rank {
                for (b, c) in m.get(t, s).iter().enumerate() {
                    if !c.is_zero() {
                        v[self.index[&(t, s, b)]] = c.clone();
                    }
                }
            }
        }
        v
    }

    pub fn to_matrix(&self, v: &[Scalar]) -> AlgMatrix {
        let mut m = AlgMatrix { rows: self.rank, cols: self.rank, entries: vec![vec![Scalar::zero(); self.alg_dim]; self.rank * self.rank] };
        for (i, &(t, s, b)) in self.entries.iter().enumerate() {
            m.entries[t * self.rank + s][b] = v[i].clone();
        }
        m
    }

    fn unit(&self, alg: &CommAlgebra, i: usize) -> AlgMatrix {
        let (t, s, b) = self.entries[i];
        let mut m = AlgMatrix::zeros(alg, self.rank, self.rank);
        m.set(t, s, alg.basis(b));
        m
    }
}

/// `End_A(E)` with `D φ = dφ − (−1)ᵖ φd` and the graded commutator (or the mutated
/// bracket).
pub fn end_algebra(alg: &CommAlgebra, degrees: &[i32], d: &AlgMatrix, kind: BracketKind) -> Dgla {
    let basis = EndBasis::new(alg, degrees);
    let space = basis.space().clone();
    let n = space.total_dim();
    let deg = |i: usize| space.degree_of(i);
    let mut dglobal = Matrix::zeros(n, n);
    for i in 0..n {
        let phi = basis.unit(alg, i);
        let sign = if deg(i) % 2 == 0 { -Scalar::one() } else { Scalar::one() };
        let image = d.mul(alg, &phi).add(&phi.mul(alg, d).scale(&sign));
        for (r, c) in basis.to_vec(&image).into_iter().enumerate() {
            dglobal[(r, i)] = c;
        }
    }
    let differential = LinearMap::from_global(space.clone(), space.clone(), 1, &dglobal)
        .expect("d has degree one on endomorphisms");
    let complex = CochainComplex::new(space.clone(), differential).expect("D² = 0 on endomorphisms");
    let mut table: HashMap<(usize, usize), Vec<(usize, Scalar)>> = HashMap::new();
    let units: Vec<AlgMatrix> = (0..n).map(|i| basis.unit(alg, i)).collect();
    for x in 0..n {
        for y in 0..n {
            let koszul = (deg(x) * deg(y)) % 2 == 0;
            let sign = match (kind, koszul) {
                (BracketKind::Commutator, true) | (BracketKind::Anticommutator, false) => -Scalar::one(),
                _ => Scalar::one(),
            };
            let v = units[x].mul(alg, &units[y]).add(&units[y].mul(alg, &units[x]).scale(&sign));
            let w: Vec<(usize, Scalar)> =
                basis.to_vec(&v).into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            if !w.is_empty() {
                table.insert((x, y), w);
            }
        }
    }
    Dgla::new_unchecked(complex, table)
}

/// Čech tower of `End(E)` on levels `0..=top`; the factor over `σ` is written in the
/// frame of `σ₀`, and `δ₀` re-frames by `φ ↦ g_{σ₁σ₀} φ g_{σ₀σ₁}`.
pub fn end_tower(gl: &Gluing, top: usize, kind: BracketKind) -> Result<SemicosimplicialDgla> {
    let nerve = gl.nerve();
    let sections = |s: &[usize]| Ok(end_algebra(nerve.algebra(s), gl.degrees(), &gl.differential_on(s[0], s), kind));
    let restrict = |t: &[usize], s: &[usize]| {
        let (at, as_) = (nerve.algebra(t), nerve.algebra(s));
        let (bt, bs) = (EndBasis::new(at, gl.degrees()), EndBasis::new(as_, gl.degrees()));
        let rho = nerve.restriction(t, s);
        let (to, from) = (gl.transition_on(t[0], s[0], s), gl.transition_on(s[0], t[0], s));
        let mut m = Matrix::zeros(bs.space().total_dim(), bt.space().total_dim());
        for i in 0..bt.space().total_dim() {
            let mut phi = bt.unit(at, i).map_entries(&rho);
            if t[0] != s[0] {
                phi = to.mul(as_, &phi).mul(as_, &from);
            }
            for (r, c) in bs.to_vec(&phi).into_iter().enumerate() {
                m[(r, i)] = c;
            }
        }
        LinearMap::from_global(bt.space().clone(), bs.space().clone(), 0, &m)
    };
    SemicosimplicialDgla::cech(&nerve.simplices(), top, sections, restrict)
}

/// Semicosimplicial DG Lie algebra of endomorphisms of a twisted complex (or bundle, via
/// [`super::TwistedBundle::to_complex`]).
pub fn end_dgla(nerve: &RingedNerve, alpha: &BrauerCocycle, c: &TwistedComplex, top: usize) -> Result<SemicosimplicialDgla> {
    end_tower(&Gluing::new(nerve, alpha, c)?, top, BracketKind::Commutator)
}
