use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::brauer::BrauerCocycle;
use super::bundle::{sorted, Gluing, TwistedComplex};
use super::endo::{end_tower, BracketKind, EndBasis};
use super::nerve::RingedNerve;
use crate::defart::ArtinAlgebra;
use crate::dgla::TensorElement;
use crate::homalg::{extend_basis, kernel_basis, vec_add, vec_scale, vec_sub, solve, AlgMatrix, CommAlgebra, Matrix, Scalar, SolveOutcome};
use crate::scosim::{cech_complex, whitney_integrate_cochain, whitney_section_cochain, z1sc_check, CechComplex, ScMc1Data, SemicosimplicialDgla, Z1scReport};
use crate::{Error, Result};

/// `t`-coefficient data of a deformation: `d_{i,A} = d_i + t l_i` and
/// `g_{ij,A} = (id + t m_ij) g_ij` on increasing edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderDeformation {
    pub l: BTreeMap<usize, AlgMatrix>,
    pub m: BTreeMap<(usize, usize), AlgMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    L { v: usize, t: usize, s: usize, b: usize },
    M { i: usize, j: usize, t: usize, s: usize, b: usize },
}

/// Coordinates of [`FirstOrderDeformation`]s: degree-1 entries of every `l_i` and
/// degree-0 entries of every `m_ij`.
#[derive(Clone, Debug)]
struct Layout {
    slots: Vec<Slot>,
}

impl Layout {
    fn new(gl: &Gluing) -> Self {
        let nerve = gl.nerve();
        let deg = gl.degrees();
        let r = deg.len();
        let mut slots = Vec::new();
        for v in 0..nerve.vertices().len() {
            for t in 0..r {
                for s in 0..r {
                    if deg[t] == deg[s] + 1 {
                        for b in 0..nerve.algebra(&[v]).dim() {
                            slots.push(Slot::L { v, t, s, b });
                        }
                    }
                }
            }
        }
        for e in nerve.faces_of_size(2) {
            for t in 0..r {
                for s in 0..r {
                    if deg[t] == deg[s] {
                        for b in 0..nerve.algebra(e).dim() {
                            slots.push(Slot::M { i: e[0], j: e[1], t, s, b });
                        }
                    }
                }
            }
        }
        Layout { slots }
    }

    fn dim(&self) -> usize {
        self.slots.len()
    }

    fn to_data(&self, gl: &Gluing, x: &[Scalar]) -> FirstOrderDeformation {
        let mut out = FirstOrderDeformation::zero(gl);
        for (slot, c) in self.slots.iter().zip(x) {
            if c.is_zero() {
                continue;
            }
            match *slot {
                Slot::L { v, t, s, b } => out.l.get_mut(&v).expect("vertex").entries[t * gl.rank() + s][b] += c,
                Slot::M { i, j, t, s, b } => out.m.get_mut(&(i, j)).expect("edge").entries[t * gl.rank() + s][b] += c,
            }
        }
        out
    }

    fn to_vec(&self, gl: &Gluing, x: &FirstOrderDeformation) -> Vec<Scalar> {
        let r = gl.rank();
        self.slots
            .iter()
            .map(|slot| match *slot {
                Slot::L { v, t, s, b } => x.l[&v].entries[t * r + s][b].clone(),
                Slot::M { i, j, t, s, b } => x.m[&(i, j)].entries[t * r + s][b].clone(),
            })
            .collect()
    }
}

impl FirstOrderDeformation {
    pub fn zero(gl: &Gluing) -> Self {
        let nerve = gl.nerve();
        let r = gl.rank();
        FirstOrderDeformation {
            l: (0..nerve.vertices().len()).map(|v| (v, AlgMatrix::zeros(nerve.algebra(&[v]), r, r))).collect(),
            m: nerve.faces_of_size(2).map(|e| ((e[0], e[1]), AlgMatrix::zeros(nerve.algebra(e), r, r))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.l.values().all(AlgMatrix::is_zero) && self.m.values().all(AlgMatrix::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        FirstOrderDeformation {
            l: self.l.iter().map(|(k, v)| (*k, v.add(&other.l[k]))).collect(),
            m: self.m.iter().map(|(k, v)| (*k, v.add(&other.m[k]))).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        FirstOrderDeformation {
            l: self.l.iter().map(|(k, v)| (*k, v.scale(c))).collect(),
            m: self.m.iter().map(|(k, v)| (*k, v.scale(c))).collect(),
        }
    }
}

/// `A_σ ⊗ ℚ[t]/(t^k)` with index `a·k + p` for `a ⊗ t^p`.
struct Ring {
    k: usize,
    alg: CommAlgebra,
}

impl Ring {
    fn new(base: &CommAlgebra, k: usize) -> Self {
        Ring { k, alg: base.tensor(&CommAlgebra::truncated_polynomials(k)) }
    }

    fn power(&self, p: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.k];
        v[p] = Scalar::one();
        v
    }

    /// `m ⊗ t^p`.
    fn lift(&self, m: &AlgMatrix, p: usize) -> AlgMatrix {
        let tp = self.power(p);
        let entries = m.entries.iter().map(|e| CommAlgebra::tensor_element(e, &tp)).collect();
        AlgMatrix { rows: m.rows, cols: m.cols, entries }
    }

    fn coefficient(&self, m: &AlgMatrix, p: usize) -> AlgMatrix {
        let entries = m.entries.iter().map(|e| e.iter().skip(p).step_by(self.k).cloned().collect()).collect();
        AlgMatrix { rows: m.rows, cols: m.cols, entries }
    }
}

/// `d_i + Σ_p t^p l_i^{(p)}` and `(id + Σ_p t^p m_ij^{(p)}) g_ij` over `A ⊗ ℚ[t]/(t^k)`,
/// `k = pieces.len() + 1`, and the `t^{k−1}` coefficients of `d_{i}²`, `g_ij d_i − d_j g_ij`
/// and `g_ki g_jk g_ij − α_{ijk}`.
fn top_residual(gl: &Gluing, pieces: &[&FirstOrderDeformation]) -> Vec<Scalar> {
    let nerve = gl.nerve();
    let k = pieces.len() + 1;
    let r = gl.rank();
    let mut out = Vec::new();
    let mut push = |m: &AlgMatrix| {
        for e in &m.entries {
            out.extend(e.iter().cloned());
        }
    };
    let d_on = |v: usize, s: &[usize], ring: &Ring| {
        let mut d = ring.lift(&gl.differential_on(v, s), 0);
        for (p, x) in pieces.iter().enumerate() {
            let l = if s.len() == 1 { x.l[&v].clone() } else { x.l[&v].map_entries(&nerve.restriction(&[v], s)) };
            d = d.add(&ring.lift(&l, p + 1));
        }
        d
    };
    // g_{ab,A} on the face s, for either orientation
    let g_on = |a: usize, b: usize, s: &[usize], ring: &Ring| {
        let (i, j) = (a.min(b), a.max(b));
        let e = sorted(i, j);
        let mut u = AlgMatrix::identity(&ring.alg, r);
        for (p, x) in pieces.iter().enumerate() {
            u = u.add(&ring.lift(&x.m[&(i, j)].map_entries(&nerve.restriction(&e, s)), p + 1));
        }
        let forward = u.mul(&ring.alg, &ring.lift(&gl.transition_on(i, j, s), 0));
        if a < b {
            forward
        } else {
            forward.inverse(&ring.alg).expect("unipotent times invertible")
        }
    };
    for v in 0..nerve.vertices().len() {
        let ring = Ring::new(nerve.algebra(&[v]), k);
        let d = d_on(v, &[v], &ring);
        push(&ring.coefficient(&d.mul(&ring.alg, &d), k - 1));
    }
    for e in nerve.faces_of_size(2) {
        let ring = Ring::new(nerve.algebra(e), k);
        let (i, j) = (e[0], e[1]);
        let g = g_on(i, j, e, &ring);
        let lhs = g.mul(&ring.alg, &d_on(i, e, &ring));
        let rhs = d_on(j, e, &ring).mul(&ring.alg, &g);
        push(&ring.coefficient(&lhs.sub(&rhs), k - 1));
    }
    for t in nerve.faces_of_size(3) {
        let ring = Ring::new(nerve.algebra(t), k);
        let (i, j, l) = (t[0], t[1], t[2]);
        let p = g_on(l, i, t, &ring).mul(&ring.alg, &g_on(j, l, t, &ring)).mul(&ring.alg, &g_on(i, j, t, &ring));
        let alpha = AlgMatrix::identity(nerve.algebra(t), r).scale_by(nerve.algebra(t), &gl.alpha().at(nerve, t));
        push(&ring.coefficient(&p.sub(&ring.lift(&alpha, 0)), k - 1));
    }
    out
}

/// Matrix of the affine map `y ↦ top_residual(pieces, y)` on layout coordinates, with its
/// constant term.
fn affine_system(gl: &Gluing, layout: &Layout, fixed: &[&FirstOrderDeformation]) -> (Matrix, Vec<Scalar>) {
    let zero = FirstOrderDeformation::zero(gl);
    let mut with = fixed.to_vec();
    with.push(&zero);
    let b = top_residual(gl, &with);
    let mut cols = Vec::with_capacity(layout.dim());
    for i in 0..layout.dim() {
        let mut e = vec![Scalar::zero(); layout.dim()];
        e[i] = Scalar::one();
        let x = layout.to_data(gl, &e);
        let mut with = fixed.to_vec();
        with.push(&x);
        cols.push(vec_sub(&top_residual(gl, &with), &b));
    }
    (Matrix::from_columns(&cols, b.len()), b)
}

/// Brute-force first-order deformation space of a twisted bundle or complex over `ℚ[ε]`:
/// solutions of the linearized conditions modulo the linearized frame changes
/// `id + ε a_i` and, for complexes, homotopies of the transitions.
#[derive(Clone, Debug)]
pub struct FirstOrderOracle {
    gluing: Gluing,
    layout: Layout,
    equations: Matrix,
    cocycles: Vec<Vec<Scalar>>,
    gauge: Vec<Vec<Scalar>>,
    gauge_rank: usize,
    classes: Vec<Vec<Scalar>>,
}

impl FirstOrderOracle {
    /// Complexes on nerves with triples are unsupported: there the conditions hold only up
    /// to homotopy, which a strict search does not see.
    pub fn new(gl: &Gluing) -> Result<Self> {
        if !gl.is_bundle() && gl.nerve().faces_of_size(3).next().is_some() {
            return Err(Error::unsupported("strict oracle for complexes needs a nerve without triples"));
        }
        let layout = Layout::new(gl);
        let (equations, b) = affine_system(gl, &layout, &[]);
        if b.iter().any(|x| !x.is_zero()) {
            return Err(Error::Invariant("undeformed data has a nonzero residual".into()));
        }
        let cocycles = kernel_basis(&equations);
        let mut gauge = Vec::new();
        let nerve = gl.nerve();
        let deg = gl.degrees();
        let r = gl.rank();
        for v in 0..nerve.vertices().len() {
            let alg = nerve.algebra(&[v]);
            for t in 0..r {
                for s in 0..r {
                    if deg[t] != deg[s] {
                        continue;
                    }
                    for b in 0..alg.dim() {
                        let mut a = AlgMatrix::zeros(alg, r, r);
                        a.set(t, s, alg.basis(b));
                        let moved = reframe_data(gl, &FirstOrderDeformation::zero(gl), &[(v, a)].into());
                        gauge.push(layout.to_vec(gl, &moved));
                    }
                }
            }
        }
        // homotopies h of degree −1 on edges: g ↦ g + ε(d h + h d) g
        for e in nerve.faces_of_size(2) {
            let alg = nerve.algebra(e);
            let dj = gl.differential_on(e[1], e);
            for t in 0..r {
                for s in 0..r {
                    if deg[t] + 1 != deg[s] {
                        continue;
                    }
                    for b in 0..alg.dim() {
                        let mut h = AlgMatrix::zeros(alg, r, r);
                        h.set(t, s, alg.basis(b));
                        let mut x = FirstOrderDeformation::zero(gl);
                        x.m.insert((e[0], e[1]), dj.mul(alg, &h).add(&h.mul(alg, &dj)));
                        gauge.push(layout.to_vec(gl, &x));
                    }
                }
            }
        }
        let n = layout.dim();
        let gauge_rank = if gauge.is_empty() { 0 } else { Matrix::from_columns(&gauge, n).rank() };
        for x in &gauge {
            if x.iter().any(|c| !c.is_zero()) && equations.apply(x).iter().any(|c| !c.is_zero()) {
                return Err(Error::Invariant("frame change leaves the solution space".into()));
            }
        }
        let basis: Vec<Vec<Scalar>> = {
            let mut acc: Vec<Vec<Scalar>> = Vec::new();
            for i in extend_basis(&[], &gauge, n) {
                acc.push(gauge[i].clone());
            }
            acc
        };
        let classes = extend_basis(&basis, &cocycles, n).into_iter().map(|i| cocycles[i].clone()).collect();
        Ok(FirstOrderOracle { gluing: gl.clone(), layout, equations, cocycles, gauge, gauge_rank, classes })
    }

    pub fn gluing(&self) -> &Gluing {
        &self.gluing
    }

    /// Dimension of the space of first-order deformations up to isomorphism.
    pub fn dimension(&self) -> usize {
        self.classes.len()
    }

    pub fn cocycle_dimension(&self) -> usize {
        self.cocycles.len()
    }

    pub fn gauge_dimension(&self) -> usize {
        self.gauge_rank
    }

    /// Representatives of a basis of classes.
    pub fn basis(&self) -> Vec<FirstOrderDeformation> {
        self.classes.iter().map(|x| self.layout.to_data(&self.gluing, x)).collect()
    }

    pub fn combination(&self, coefficients: &[Scalar]) -> FirstOrderDeformation {
        let mut x = vec![Scalar::zero(); self.layout.dim()];
        for (c, v) in coefficients.iter().zip(&self.classes) {
            for (a, b) in x.iter_mut().zip(v) {
                *a += c * b;
            }
        }
        self.layout.to_data(&self.gluing, &x)
    }

    pub fn is_deformation(&self, x: &FirstOrderDeformation) -> bool {
        self.equations.apply(&self.layout.to_vec(&self.gluing, x)).iter().all(Zero::is_zero)
    }

    /// Whether `x − y` is a linearized frame change.
    pub fn equivalent(&self, x: &FirstOrderDeformation, y: &FirstOrderDeformation) -> bool {
        let diff = vec_sub(&self.layout.to_vec(&self.gluing, x), &self.layout.to_vec(&self.gluing, y));
        if diff.iter().all(Zero::is_zero) {
            return true;
        }
        if self.gauge.is_empty() {
            return false;
        }
        let m = Matrix::from_columns(&self.gauge, self.layout.dim());
        matches!(solve(&m, &diff), Ok(SolveOutcome::Solved(_)))
    }

    /// Frame change `id + ε a_i` applied to `x` by multiplying out over `ℚ[ε]`.
    pub fn reframe(&self, x: &FirstOrderDeformation, a: &BTreeMap<usize, AlgMatrix>) -> FirstOrderDeformation {
        reframe_data(&self.gluing, x, a)
    }

    /// Searches the `t²` coefficients `(l', m')` extending `x` to `ℚ[t]/(t³)`.
    pub fn extend_second_order(&self, x: &FirstOrderDeformation) -> Result<Option<FirstOrderDeformation>> {
        if !self.is_deformation(x) {
            return Err(Error::input("not a first-order deformation"));
        }
        let (m, b) = affine_system(&self.gluing, &self.layout, &[x]);
        let rhs: Vec<Scalar> = b.iter().map(|c| -c).collect();
        Ok(match solve(&m, &rhs)? {
            SolveOutcome::Solved(y) => Some(self.layout.to_data(&self.gluing, &y)),
            SolveOutcome::Inconsistent => None,
        })
    }
}

fn reframe_data(gl: &Gluing, x: &FirstOrderDeformation, a: &BTreeMap<usize, AlgMatrix>) -> FirstOrderDeformation {
    let nerve = gl.nerve();
    let r = gl.rank();
    let h = |v: usize, s: &[usize], ring: &Ring| {
        let one = AlgMatrix::identity(&ring.alg, r);
        match a.get(&v) {
            Some(m) => one.add(&ring.lift(&m.map_entries(&nerve.restriction(&[v], s)), 1)),
            None => one,
        }
    };
    let mut out = FirstOrderDeformation::zero(gl);
    for v in 0..nerve.vertices().len() {
        let ring = Ring::new(nerve.algebra(&[v]), 2);
        let d = ring.lift(&gl.differential_on(v, &[v]), 0).add(&ring.lift(&x.l[&v], 1));
        let hv = h(v, &[v], &ring);
        let moved = hv.mul(&ring.alg, &d).mul(&ring.alg, &hv.inverse(&ring.alg).expect("unipotent"));
        out.l.insert(v, ring.coefficient(&moved, 1));
    }
    for e in nerve.faces_of_size(2) {
        let (i, j) = (e[0], e[1]);
        let alg = nerve.algebra(e);
        let ring = Ring::new(alg, 2);
        let g = gl.transition_on(i, j, e);
        let deformed = AlgMatrix::identity(&ring.alg, r).add(&ring.lift(&x.m[&(i, j)], 1)).mul(&ring.alg, &ring.lift(&g, 0));
        let hi = h(i, e, &ring).inverse(&ring.alg).expect("unipotent");
        let moved = h(j, e, &ring).mul(&ring.alg, &deformed).mul(&ring.alg, &hi);
        let m = ring.coefficient(&moved, 1).mul(alg, &gl.transition_on(j, i, e));
        out.m.insert((i, j), m);
    }
    out
}

/// Builds the oracle for validated input.
pub fn deform_first_order(nerve: &RingedNerve, alpha: &BrauerCocycle, c: &TwistedComplex) -> Result<FirstOrderOracle> {
    FirstOrderOracle::new(&Gluing::new(nerve, alpha, c)?)
}

/// Places per-level global vectors into the Čech total complex.
fn place_level(cech: &CechComplex, tower: &SemicosimplicialDgla, n: usize, v: &[Scalar]) -> Vec<Scalar> {
    let s = tower.level(n).space();
    let mut out = vec![Scalar::zero(); cech.complex.space().total_dim()];
    for p in s.degrees().collect::<Vec<_>>() {
        let placed = cech.place(n, p, s.component(v, p));
        for (a, b) in out.iter_mut().zip(placed) {
            *a += b;
        }
    }
    out
}

fn face_name(f: &[usize]) -> String {
    f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-")
}

/// Level-`n` global coordinates of a family of matrices, one per simplex.
fn level_vector(gl: &Gluing, tower: &SemicosimplicialDgla, n: usize, parts: &[(Vec<usize>, AlgMatrix)]) -> Vec<Scalar> {
    let l = tower.level(n);
    let mut v = vec![Scalar::zero(); l.dim()];
    for (f, m) in parts {
        let basis = EndBasis::new(gl.nerve().algebra(f), gl.degrees());
        let name = face_name(f);
        for (i, c) in basis.to_vec(m).into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = format!("{}@{name}", basis.space().label(i));
            let k = l.space().index_of(&label).expect("tower label");
            v[k] += c;
        }
    }
    v
}

/// The Čech cochain `(l, m̃)` of a first-order deformation, where
/// `m̃_ij = −g_ji m_ij g_ij` is `m_ij` moved into the frame of `i` with the sign of
/// `g_{ij,A} = g_ij e^{−m̃_ij}`.
pub fn cech_cochain(gl: &Gluing, tower: &SemicosimplicialDgla, cech: &CechComplex, x: &FirstOrderDeformation) -> Vec<Scalar> {
    let l: Vec<(Vec<usize>, AlgMatrix)> = x.l.iter().map(|(&v, m)| (vec![v], m.clone())).collect();
    let m: Vec<(Vec<usize>, AlgMatrix)> = x
        .m
        .iter()
        .map(|(&(i, j), m)| {
            let e = vec![i, j];
            let alg = gl.nerve().algebra(&e);
            let framed = gl.transition_on(j, i, &e).mul(alg, m).mul(alg, &gl.transition_on(i, j, &e));
            (e, framed.scale(&-Scalar::one()))
        })
        .collect();
    let a = place_level(cech, tower, 0, &level_vector(gl, tower, 0, &l));
    if tower.top() == 0 {
        return a;
    }
    vec_add(&a, &place_level(cech, tower, 1, &level_vector(gl, tower, 1, &m)))
}

/// Both sides of the second-order comparison for one first-order deformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondOrderReport {
    pub oracle_extends: bool,
    pub model_extends: bool,
    /// `−½ ∫[x, x]` for the Whitney section `x` of the class, as a Čech 2-cochain.
    pub obstruction: Vec<(String, Scalar)>,
    pub extension: Option<FirstOrderDeformation>,
}

impl SecondOrderReport {
    pub fn agree(&self) -> bool {
        self.oracle_extends == self.model_extends
    }
}

/// Oracle: direct search for the `t²` term. Model: the primary obstruction of the class
/// in the endomorphism tower, pulled back to the Čech complex by Whitney integration.
pub fn obstruction_second_order(oracle: &FirstOrderOracle, x: &FirstOrderDeformation, kind: BracketKind) -> Result<SecondOrderReport> {
    let gl = oracle.gluing();
    let extension = oracle.extend_second_order(x)?;
    let top = gl.nerve().dimension().max(2);
    let tower = end_tower(gl, top, kind)?;
    let cech = cech_complex(&tower)?;
    let c = cech_cochain(gl, &tower, &cech, x);
    let section = whitney_section_cochain(&tower, &cech, &c, top);
    let half = Scalar::new((-1).into(), 2.into());
    let ob = vec_scale(&whitney_integrate_cochain(&tower, &cech, &section.bracket(&section, &tower)), &half);
    let space = cech.complex.space();
    let local = space.component(&ob, 2);
    let model_extends = cech.complex.is_coboundary(2, local);
    let obstruction = ob
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (space.label(i).to_string(), v.clone()))
        .collect();
    Ok(SecondOrderReport { oracle_extends: extension.is_some(), model_extends, obstruction, extension })
}

/// Explicit deformation of a bundle over `A`: `g_{ij,A}` over `A_{ij} ⊗ A` on increasing
/// edges, with `A` in the basis `1, b_1, …` of [`ArtinAlgebra::unitalization`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinDeformation {
    pub transitions: BTreeMap<(usize, usize), AlgMatrix>,
}

impl ArtinDeformation {
    /// `(id + Σ_p t^p m^{(p)}) g` for `A = ℚ[t]/(tⁿ)` in its standard basis.
    pub fn from_pieces(gl: &Gluing, art: &ArtinAlgebra, pieces: &[&FirstOrderDeformation]) -> Result<Self> {
        if pieces.len() > art.dim() {
            return Err(Error::input("more pieces than powers of t"));
        }
        let nerve = gl.nerve();
        let mut transitions = BTreeMap::new();
        for e in nerve.faces_of_size(2) {
            let ring = Ring::new(nerve.algebra(e), art.dim() + 1);
            let mut u = AlgMatrix::identity(&ring.alg, gl.rank());
            for (p, x) in pieces.iter().enumerate() {
                u = u.add(&ring.lift(&x.m[&(e[0], e[1])], p + 1));
            }
            transitions.insert((e[0], e[1]), u.mul(&ring.alg, &ring.lift(&gl.transition_on(e[0], e[1], e), 0)));
        }
        Ok(ArtinDeformation { transitions })
    }
}

#[derive(Clone, Debug)]
pub struct BridgeReport {
    pub tower: SemicosimplicialDgla,
    pub data: ScMc1Data,
    pub check: Z1scReport,
}

fn ring_restriction(nerve: &RingedNerve, t: &[usize], s: &[usize], k: usize) -> Matrix {
    let rho = nerve.restriction(t, s);
    let mut m = Matrix::zeros(rho.rows() * k, rho.cols() * k);
    for a in 0..rho.rows() {
        for b in 0..rho.cols() {
            for p in 0..k {
                m[(a * k + p, b * k + p)] = rho[(a, b)].clone();
            }
        }
    }
    m
}

/// `(l, m) = (0, log(g_{ij,A}⁻¹ g_ij))` in the frame of `i`, checked against `Z¹_sc`.
pub fn z1sc_bridge(gl: &Gluing, art: &ArtinAlgebra, def: &ArtinDeformation) -> Result<BridgeReport> {
    if !gl.is_bundle() {
        return Err(Error::unsupported("the bridge handles bundles"));
    }
    let nerve = gl.nerve();
    let k = art.dim() + 1;
    let r = gl.rank();
    let a_plus = art.unitalization();
    let tower = end_tower(gl, 2, BracketKind::Commutator)?;
    let mut on: BTreeMap<(usize, usize), AlgMatrix> = BTreeMap::new();
    for e in nerve.faces_of_size(2) {
        let ring = Ring { k, alg: nerve.algebra(e).tensor(&a_plus) };
        let show = nerve.show(e);
        let g = def.transitions.get(&(e[0], e[1])).ok_or_else(|| Error::input(format!("missing deformed transition on {show}")))?;
        if g.rows != r || g.cols != r || g.entries.iter().any(|x| x.len() != ring.alg.dim()) {
            return Err(Error::shape(format!("deformed transition on {show} has the wrong shape")));
        }
        if ring.coefficient(g, 0) != gl.transition_on(e[0], e[1], e) {
            return Err(Error::input(format!("deformation does not reduce to g on {show}")));
        }
        on.insert((e[0], e[1]), g.clone());
    }
    for t in nerve.faces_of_size(3) {
        let alg = nerve.algebra(t).tensor(&a_plus);
        let lift = |i: usize, j: usize| on[&(i, j)].map_entries(&ring_restriction(nerve, &sorted(i, j), t, k));
        let (i, j, l) = (t[0], t[1], t[2]);
        let inv = lift(i, l).inverse(&alg).ok_or_else(|| Error::input(format!("deformed transition ({i},{l}) is not invertible")))?;
        let p = inv.mul(&alg, &lift(j, l)).mul(&alg, &lift(i, j));
        let ring = Ring { k, alg: alg.clone() };
        let alpha = AlgMatrix::identity(nerve.algebra(t), r).scale_by(nerve.algebra(t), &gl.alpha().at(nerve, t));
        if p != ring.lift(&alpha, 0) {
            return Err(Error::input(format!("twisted cocycle fails on {}", nerve.show(t))));
        }
    }
    let level1 = tower.level(1);
    let mut columns = vec![vec![Scalar::zero(); level1.dim()]; art.dim()];
    for (&(i, j), g) in &on {
        let e = vec![i, j];
        let ring = Ring { k, alg: nerve.algebra(&e).tensor(&a_plus) };
        let inv = g.inverse(&ring.alg).ok_or_else(|| Error::input(format!("deformed transition ({i},{j}) is not invertible")))?;
        let m = inv.mul(&ring.alg, &ring.lift(&gl.transition_on(i, j, &e), 0)).log_unipotent(&ring.alg)?;
        for (q, col) in columns.iter_mut().enumerate() {
            let v = level_vector(gl, &tower, 1, &[(e.clone(), ring.coefficient(&m, q + 1))]);
            for (a, b) in col.iter_mut().zip(v) {
                *a += b;
            }
        }
    }
    let data = ScMc1Data {
        l: TensorElement::zero(tower.level(0), art),
        m: TensorElement { columns },
        witness: None,
    };
    let check = z1sc_check(&tower, art, &data)?;
    Ok(BridgeReport { tower, data, check })
}

/// Oracle dimension against `dim H¹` of the Čech complex of the endomorphism tower, with
/// the induced map on classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderComparison {
    pub oracle_dim: usize,
    pub h1_dim: usize,
    /// Oracle cocycles go to Čech cocycles and frame changes to coboundaries.
    pub compatible: bool,
    /// Rank of the induced map on classes.
    pub image_rank: usize,
}

impl FirstOrderComparison {
    pub fn agree(&self) -> bool {
        self.compatible && self.oracle_dim == self.h1_dim && self.image_rank == self.oracle_dim
    }
}

pub fn compare_first_order(oracle: &FirstOrderOracle) -> Result<FirstOrderComparison> {
    let gl = oracle.gluing();
    let tower = end_tower(gl, 2, BracketKind::Commutator)?;
    let cech = cech_complex(&tower)?;
    let h1 = cech.complex.cohomology(1);
    let image = |v: &[Scalar]| cech_cochain(gl, &tower, &cech, &oracle.layout.to_data(gl, v));
    let space = cech.complex.space();
    let mut compatible = true;
    for v in &oracle.cocycles {
        let c = image(v);
        compatible &= space.homogeneous_degree(&c).is_none_or(|d| d == 1) && cech.complex.apply_d(&c).iter().all(Zero::is_zero);
    }
    for v in &oracle.gauge {
        let c = image(v);
        compatible &= cech.complex.is_coboundary(1, space.component(&c, 1));
    }
    let classes: Vec<Vec<Scalar>> = oracle.classes.iter().map(|v| h1.projection.apply(space.component(&image(v), 1))).collect();
    let image_rank = if classes.is_empty() || h1.dimension == 0 { 0 } else { Matrix::from_columns(&classes, h1.dimension).rank() };
    Ok(FirstOrderComparison { oracle_dim: oracle.dimension(), h1_dim: h1.dimension, compatible, image_rank })
}
