use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::brauer::BrauerCocycle;
use super::nerve::{CheckReport, Face, RingedNerve};
use crate::homalg::{AlgMatrix, CommAlgebra, Matrix, Scalar};
use crate::{Error, Result};

/// Locally free twisted sheaf of rank `r`: `g_ij: E_i → E_j` over `A_{ij}` with
/// `g_ki g_jk g_ij = α_{ijk}` on `E_i`. Transitions may be given on either orientation
/// of an edge; the other one is the inverse. `g_ii` may be omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedBundle {
    pub rank: usize,
    pub transitions: BTreeMap<(usize, usize), AlgMatrix>,
}

/// Twisted complex of locally free modules: basis vector `a` sits in degree `degrees[a]`,
/// `d_i` has degree `+1` (omitted means zero) and transitions are degree-preserving chain
/// maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    pub degrees: Vec<i32>,
    pub differentials: BTreeMap<usize, AlgMatrix>,
    pub transitions: BTreeMap<(usize, usize), AlgMatrix>,
}

impl TwistedBundle {
    pub fn trivial(nerve: &RingedNerve, rank: usize) -> Self {
        let transitions = nerve
            .faces_of_size(2)
            .map(|e| ((e[0], e[1]), AlgMatrix::identity(nerve.algebra(e), rank)))
            .collect();
        TwistedBundle { rank, transitions }
    }

    /// Rational transitions on increasing edges.
    pub fn from_rational(nerve: &RingedNerve, rank: usize, g: &BTreeMap<(usize, usize), Matrix>) -> Self {
        let transitions = g
            .iter()
            .map(|(&(i, j), m)| ((i, j), AlgMatrix::from_rational(nerve.algebra(&sorted(i, j)), m)))
            .collect();
        TwistedBundle { rank, transitions }
    }

    pub fn to_complex(&self) -> TwistedComplex {
        TwistedComplex {
            degrees: vec![0; self.rank],
            differentials: BTreeMap::new(),
            transitions: self.transitions.clone(),
        }
    }
}

pub(crate) fn sorted(i: usize, j: usize) -> Face {
    if i < j {
        vec![i, j]
    } else {
        vec![j, i]
    }
}

/// Validated gluing data with transitions filled in on both orientations of every edge.
#[derive(Clone, Debug)]
pub struct Gluing {
    pub(crate) nerve: RingedNerve,
    pub(crate) alpha: BrauerCocycle,
    pub(crate) degrees: Vec<i32>,
    pub(crate) d: Vec<AlgMatrix>,
    pub(crate) g: BTreeMap<(usize, usize), AlgMatrix>,
}

fn restrict_matrix(nerve: &RingedNerve, t: &[usize], s: &[usize], m: &AlgMatrix) -> AlgMatrix {
    if t == s {
        return m.clone();
    }
    m.map_entries(&nerve.restriction(t, s))
}

fn scalar_matrix(alg: &CommAlgebra, n: usize, c: &[Scalar]) -> AlgMatrix {
    AlgMatrix::identity(alg, n).scale_by(alg, c)
}

fn shape_ok(m: &AlgMatrix, r: usize, alg: &CommAlgebra) -> bool {
    m.rows == r && m.cols == r && m.entries.iter().all(|e| e.len() == alg.dim())
}

fn has_degree(m: &AlgMatrix, degrees: &[i32], shift: i32) -> bool {
    let r = degrees.len();
    (0..r).all(|a| (0..r).all(|b| degrees[a] == degrees[b] + shift || m.get(a, b).iter().all(Zero::is_zero)))
}

fn assemble(
    nerve: &RingedNerve,
    alpha: &BrauerCocycle,
    c: &TwistedComplex,
    report: &mut CheckReport,
) -> Option<Gluing> {
    let r = c.degrees.len();
    if r == 0 {
        report.push("rank must be positive".into());
        return None;
    }
    let nv = nerve.vertices().len();
    let mut d = Vec::with_capacity(nv);
    for v in 0..nv {
        let alg = nerve.algebra(&[v]);
        let m = c.differentials.get(&v).cloned().unwrap_or_else(|| AlgMatrix::zeros(alg, r, r));
        if !shape_ok(&m, r, alg) {
            report.push(format!("d at {} has the wrong shape", nerve.show(&[v])));
            return None;
        }
        d.push(m);
    }
    for &v in c.differentials.keys() {
        if v >= nv {
            report.push(format!("differential given on unknown vertex {v}"));
        }
    }
    let mut g: BTreeMap<(usize, usize), AlgMatrix> = BTreeMap::new();
    for (&(i, j), m) in &c.transitions {
        let e = sorted(i, j);
        if i == j {
            if i >= nv || !shape_ok(m, r, nerve.algebra(&[i])) {
                report.push(format!("transition ({i},{j}) has the wrong shape or vertex"));
            } else if *m != AlgMatrix::identity(nerve.algebra(&[i]), r) {
                report.push(format!("g_ii ≠ id at {}", nerve.show(&[i])));
            }
            continue;
        }
        if !nerve.is_face(&e) {
            report.push(format!("transition ({i},{j}) is not on an edge"));
            continue;
        }
        if !shape_ok(m, r, nerve.algebra(&e)) {
            report.push(format!("transition ({i},{j}) has the wrong shape"));
            continue;
        }
        g.insert((i, j), m.clone());
    }
    if !report.is_valid() {
        return None;
    }
    for e in nerve.faces_of_size(2) {
        let (i, j) = (e[0], e[1]);
        let alg = nerve.algebra(e);
        let show = nerve.show(e);
        match (g.get(&(i, j)).cloned(), g.get(&(j, i)).cloned()) {
            (None, None) => report.push(format!("missing transition on {show}")),
            (Some(a), Some(b)) => {
                if b.mul(alg, &a) != AlgMatrix::identity(alg, r) {
                    report.push(format!("g_ji ≠ g_ij⁻¹ on {show}"));
                }
            }
            (Some(a), None) => match a.inverse(alg) {
                Some(b) => {
                    g.insert((j, i), b);
                }
                None => report.push(format!("transition ({i},{j}) is not invertible")),
            },
            (None, Some(b)) => match b.inverse(alg) {
                Some(a) => {
                    g.insert((i, j), a);
                }
                None => report.push(format!("transition ({j},{i}) is not invertible")),
            },
        }
    }
    if !report.is_valid() {
        return None;
    }
    Some(Gluing { nerve: nerve.clone(), alpha: alpha.clone(), degrees: c.degrees.clone(), d, g })
}

fn check(g: &Gluing, report: &mut CheckReport) {
    let nerve = &g.nerve;
    let r = g.degrees.len();
    for (v, d) in g.d.iter().enumerate() {
        let alg = nerve.algebra(&[v]);
        let show = nerve.show(&[v]);
        if !has_degree(d, &g.degrees, 1) {
            report.push(format!("d at {show} is not of degree 1"));
        }
        if !d.mul(alg, d).is_zero() {
            report.push(format!("d² ≠ 0 at {show}"));
        }
    }
    for e in nerve.faces_of_size(2) {
        let alg = nerve.algebra(e);
        for (i, j) in [(e[0], e[1]), (e[1], e[0])] {
            let m = &g.g[&(i, j)];
            if !has_degree(m, &g.degrees, 0) {
                report.push(format!("transition ({i},{j}) does not preserve degrees"));
                continue;
            }
            let di = restrict_matrix(nerve, &[i], e, &g.d[i]);
            let dj = restrict_matrix(nerve, &[j], e, &g.d[j]);
            if m.mul(alg, &di) != dj.mul(alg, m) {
                report.push(format!("transition ({i},{j}) does not commute with d"));
            }
        }
    }
    for t in nerve.faces_of_size(3) {
        if g.triple(t[0], t[1], t[2]) != scalar_matrix(nerve.algebra(t), r, &g.alpha.at(nerve, t)) {
            report.push(format!("twisted cocycle fails on {}", nerve.show(t)));
        }
    }
}

impl Gluing {
    pub fn new(nerve: &RingedNerve, alpha: &BrauerCocycle, c: &TwistedComplex) -> Result<Self> {
        let mut report = CheckReport::default();
        let g = assemble(nerve, alpha, c, &mut report);
        if let Some(g) = &g {
            check(g, &mut report);
        }
        match (g, report.violations.first()) {
            (Some(g), None) => Ok(g),
            (_, Some(v)) => Err(Error::input(v.clone())),
            (None, None) => unreachable!("assembly failed without a violation"),
        }
    }

    pub fn nerve(&self) -> &RingedNerve {
        &self.nerve
    }

    pub fn alpha(&self) -> &BrauerCocycle {
        &self.alpha
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn is_bundle(&self) -> bool {
        self.d.iter().all(AlgMatrix::is_zero)
    }

    /// `g_ij` restricted to the face `s ⊇ {i, j}`.
    pub fn transition_on(&self, i: usize, j: usize, s: &[usize]) -> AlgMatrix {
        if i == j {
            return AlgMatrix::identity(self.nerve.algebra(s), self.rank());
        }
        restrict_matrix(&self.nerve, &sorted(i, j), s, &self.g[&(i, j)])
    }

    /// `d_i` restricted to the face `s ∋ i`.
    pub fn differential_on(&self, i: usize, s: &[usize]) -> AlgMatrix {
        restrict_matrix(&self.nerve, &[i], s, &self.d[i])
    }

    /// `g_ki g_jk g_ij` in `A_{ijk}` for distinct vertices spanning a face.
    pub fn triple(&self, i: usize, j: usize, k: usize) -> AlgMatrix {
        let mut s = vec![i, j, k];
        s.sort();
        let alg = self.nerve.algebra(&s);
        self.transition_on(k, i, &s)
            .mul(alg, &self.transition_on(j, k, &s))
            .mul(alg, &self.transition_on(i, j, &s))
    }

    /// Changes frames by `h_i: E_i → E_i'`: `g_ij ↦ h_j g_ij h_i⁻¹`, `d_i ↦ h_i d_i h_i⁻¹`.
    pub fn reframed(&self, h: &[AlgMatrix]) -> Result<Gluing> {
        let mut out = self.clone();
        let inv: Vec<AlgMatrix> = h
            .iter()
            .enumerate()
            .map(|(v, m)| m.inverse(self.nerve.algebra(&[v])).ok_or_else(|| Error::input(format!("frame change at {v} is not invertible"))))
            .collect::<Result<_>>()?;
        for (v, d) in out.d.iter_mut().enumerate() {
            let alg = self.nerve.algebra(&[v]);
            *d = h[v].mul(alg, d).mul(alg, &inv[v]);
        }
        for (&(i, j), m) in out.g.iter_mut() {
            let e = sorted(i, j);
            let alg = self.nerve.algebra(&e);
            let hj = restrict_matrix(&self.nerve, &[j], &e, &h[j]);
            let hi = restrict_matrix(&self.nerve, &[i], &e, &inv[i]);
            *m = hj.mul(alg, m).mul(alg, &hi);
        }
        Ok(out)
    }

    /// Transitions on increasing edges, as input data.
    pub fn to_complex(&self) -> TwistedComplex {
        TwistedComplex {
            degrees: self.degrees.clone(),
            differentials: self.d.iter().cloned().enumerate().filter(|(_, d)| !d.is_zero()).collect(),
            transitions: self.g.iter().filter(|((i, j), _)| i < j).map(|(k, m)| (*k, m.clone())).collect(),
        }
    }
}

/// Checks `g_ii = id`, `g_ji = g_ij⁻¹` and `g_ki g_jk g_ij = α_{ijk}` on every face.
pub fn validate_bundle(nerve: &RingedNerve, alpha: &BrauerCocycle, bundle: &TwistedBundle) -> CheckReport {
    if bundle.rank == 0 {
        let mut r = CheckReport::default();
        r.push("rank must be positive".into());
        return r;
    }
    validate_complex(nerve, alpha, &bundle.to_complex())
}

/// Bundle conditions plus `d_i² = 0`, degrees, and transitions commuting with `d`.
pub fn validate_complex(nerve: &RingedNerve, alpha: &BrauerCocycle, c: &TwistedComplex) -> CheckReport {
    let mut report = CheckReport::default();
    if c.degrees.is_empty() {
        report.push("rank must be positive".into());
        return report;
    }
    if let Some(g) = assemble(nerve, alpha, c, &mut report) {
        check(&g, &mut report);
    }
    report
}

/// `±id, ±swap, ±diag(1,−1), ±[[0,−1],[1,0]]` as integer matrices.
pub fn signed_permutations() -> Vec<[[i64; 2]; 2]> {
    let base = [[[1, 0], [0, 1]], [[0, 1], [1, 0]], [[1, 0], [0, -1]], [[0, -1], [1, 0]]];
    base.iter().flat_map(|m| [*m, m.map(|r| r.map(|x| -x))]).collect()
}

fn mul2(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn inv2(a: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    // every candidate has determinant ±1
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [[a[1][1] * det, -a[0][1] * det], [-a[1][0] * det, a[0][0] * det]]
}

/// Outcome of an exhaustive realization search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationSearch {
    pub found: Option<TwistedBundle>,
    /// Candidate assignments examined (partial ones pruned early count once).
    pub examined: u64,
}

fn sign_values(nerve: &RingedNerve, alpha: &BrauerCocycle) -> Result<BTreeMap<Face, i64>> {
    let mut out = BTreeMap::new();
    for t in nerve.faces_of_size(3) {
        if nerve.algebra(t).dim() != 1 {
            return Err(Error::unsupported("realization search needs ℚ on every triple"));
        }
        let v = &alpha.at(nerve, t)[0];
        let s = if v.is_one() {
            1
        } else if *v == -Scalar::one() {
            -1
        } else {
            return Err(Error::unsupported("realization search needs α = ±1"));
        };
        out.insert(t.clone(), s);
    }
    if nerve.faces_of_size(2).any(|e| nerve.algebra(e).dim() != 1) {
        return Err(Error::unsupported("realization search needs ℚ on every edge"));
    }
    Ok(out)
}

/// Depth-first search over assignments of `candidates` to increasing edges, pruning at
/// every triple whose edges are all assigned. Found bundles are confirmed by
/// [`validate_bundle`].
fn search<M: Clone>(
    nerve: &RingedNerve,
    alpha: &BrauerCocycle,
    candidates: &[M],
    holds: impl Fn(&M, &M, &M, i64) -> bool,
    build: impl Fn(&BTreeMap<(usize, usize), M>) -> TwistedBundle,
) -> Result<RealizationSearch> {
    let signs = sign_values(nerve, alpha)?;
    let edges: Vec<Face> = nerve.faces_of_size(2).cloned().collect();
    // triples that become checkable once edge e is assigned
    let mut due: Vec<Vec<(usize, usize, usize, i64)>> = vec![Vec::new(); edges.len()];
    let pos = |a: usize, b: usize| edges.iter().position(|e| *e == [a, b]).expect("edge");
    for (t, &s) in &signs {
        let ids = (pos(t[0], t[1]), pos(t[1], t[2]), pos(t[0], t[2]));
        let last = ids.0.max(ids.1).max(ids.2);
        due[last].push((ids.0, ids.1, ids.2, s));
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(edges.len());
    let mut examined = 0u64;
    fn go<M: Clone>(
        e: usize,
        chosen: &mut Vec<usize>,
        examined: &mut u64,
        candidates: &[M],
        due: &[Vec<(usize, usize, usize, i64)>],
        holds: &dyn Fn(&M, &M, &M, i64) -> bool,
    ) -> bool {
        if e == due.len() {
            return true;
        }
        for c in 0..candidates.len() {
            *examined += 1;
            chosen.push(c);
            let ok = due[e].iter().all(|&(ij, jk, ik, s)| {
                holds(&candidates[chosen[ij]], &candidates[chosen[jk]], &candidates[chosen[ik]], s)
            });
            if ok && go(e + 1, chosen, examined, candidates, due, holds) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let found = if go(0, &mut chosen, &mut examined, candidates, &due, &holds) {
        let assignment = edges.iter().zip(&chosen).map(|(e, &c)| ((e[0], e[1]), candidates[c].clone())).collect();
        let bundle = build(&assignment);
        if !validate_bundle(nerve, alpha, &bundle).is_valid() {
            return Err(Error::Invariant("search result fails validation".into()));
        }
        Some(bundle)
    } else {
        None
    };
    Ok(RealizationSearch { found, examined })
}

/// Exhaustive search for a rank-1 bundle with `g_ij ∈ {±1}`. Since `α = ±1`, replacing
/// any rational solution by its signs gives one of these, so a failure rules out all
/// rank-1 bundles over `ℚ`.
pub fn rank_one_search(nerve: &RingedNerve, alpha: &BrauerCocycle) -> Result<RealizationSearch> {
    search(
        nerve,
        alpha,
        &[1i64, -1],
        // g_ki g_jk g_ij = g_ik⁻¹ g_jk g_ij
        |ij, jk, ik, s| ik * jk * ij == s,
        |a| {
            let m = a.iter().map(|(&k, &v)| (k, Matrix::from_i64(1, 1, &[v]))).collect();
            TwistedBundle::from_rational(nerve, 1, &m)
        },
    )
}

/// Exhaustive search for a rank-2 bundle with every `g_ij` among [`signed_permutations`].
pub fn rank_two_search(nerve: &RingedNerve, alpha: &BrauerCocycle) -> Result<RealizationSearch> {
    search(
        nerve,
        alpha,
        &signed_permutations(),
        |ij, jk, ik, s| mul2(&mul2(&inv2(ik), jk), ij) == [[s, 0], [0, s]],
        |a| {
            let m = a
                .iter()
                .map(|(&k, v)| (k, Matrix::from_i64(2, 2, &[v[0][0], v[0][1], v[1][0], v[1][1]])))
                .collect();
            TwistedBundle::from_rational(nerve, 2, &m)
        },
    )
}
