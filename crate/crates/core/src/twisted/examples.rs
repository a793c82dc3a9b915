//! Small nerves and twisted bundles used throughout the tests, the CLI examples and the
//! benchmarks.
use std::collections::BTreeMap;

use super::brauer::BrauerCocycle;
use super::bundle::{TwistedBundle, TwistedComplex};
use super::nerve::{Face, RingedNerve};
use crate::homalg::{AlgMatrix, Matrix};
use crate::Result;

/// Nerve, twist and gluing data together.
#[derive(Clone, Debug)]
pub struct Example {
    pub nerve: RingedNerve,
    pub alpha: BrauerCocycle,
    pub complex: TwistedComplex,
}

fn constant(n: usize, maximal: &[&[usize]]) -> RingedNerve {
    let m: Vec<Face> = maximal.iter().map(|f| f.to_vec()).collect();
    RingedNerve::constant(n, &m).expect("example nerve")
}

/// Three opens covering a circle: vertices and the three edges.
pub fn circle() -> RingedNerve {
    constant(3, &[&[0, 1], &[1, 2], &[0, 2]])
}

/// Boundary of the tetrahedron: all subsets of `{0,1,2,3}` of size at most three.
pub fn tetrahedron() -> RingedNerve {
    constant(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
}

pub fn single_vertex() -> RingedNerve {
    constant(1, &[&[0]])
}

/// Six-vertex triangulation of the real projective plane.
pub fn projective_plane() -> RingedNerve {
    constant(
        6,
        &[
            &[0, 1, 2],
            &[0, 2, 3],
            &[0, 3, 4],
            &[0, 4, 5],
            &[0, 1, 5],
            &[1, 2, 4],
            &[2, 3, 5],
            &[1, 3, 4],
            &[2, 4, 5],
            &[1, 3, 5],
        ],
    )
}

/// Seven-vertex triangulation of the torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}`
/// mod 7.
pub fn torus() -> RingedNerve {
    let mut tri: Vec<Face> = Vec::new();
    for i in 0..7 {
        for (a, b) in [(1, 3), (2, 3)] {
            let mut t = vec![i, (i + a) % 7, (i + b) % 7];
            t.sort();
            tri.push(t);
        }
    }
    RingedNerve::constant(7, &tri).expect("torus nerve")
}

/// `−1` on the triple `{1,2,3}` of the tetrahedron and `1` elsewhere.
pub fn tetrahedron_twist(nerve: &RingedNerve) -> BrauerCocycle {
    BrauerCocycle::signs(nerve, &[vec![1, 2, 3]]).expect("tetrahedron twist")
}

fn with_trivial_twist(nerve: RingedNerve, bundle: TwistedBundle) -> Example {
    Example { complex: bundle.to_complex(), alpha: BrauerCocycle::trivial(), nerve }
}

/// Rank-1 bundle with all transitions `1` on the circle.
pub fn circle_line_bundle() -> Example {
    let n = circle();
    let b = TwistedBundle::trivial(&n, 1);
    with_trivial_twist(n, b)
}

pub fn trivial_bundle(nerve: RingedNerve, rank: usize) -> Example {
    let b = TwistedBundle::trivial(&nerve, rank);
    with_trivial_twist(nerve, b)
}

fn rational(rows: usize, entries: &[i64]) -> Matrix {
    Matrix::from_i64(rows, rows, entries)
}

/// Product of the transitions' triple compositions, read off as `α`.
fn induced_twist(nerve: &RingedNerve, g: &BTreeMap<(usize, usize), Matrix>) -> Result<BrauerCocycle> {
    let inv = |i: usize, j: usize| g[&(i, j)].inverse().expect("invertible");
    let mut values = BTreeMap::new();
    for t in nerve.faces_of_size(3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        let p = inv(i, k).mul(&g[&(j, k)]).mul(&g[&(i, j)]);
        values.insert(t.clone(), vec![p[(0, 0)].clone()]);
    }
    BrauerCocycle::new(nerve, values)
}

/// Rank-2 bundle on the projective plane with `g_ij = J^{w_ij}`, `J² = −1`, for the
/// nontrivial class `w ∈ H¹(RP², ℤ/2)`; the twist is `α = (−1)^{w∪w}`.
pub fn projective_plane_bundle() -> Example {
    let nerve = projective_plane();
    let w = [[1, 3], [1, 4], [2, 4], [2, 5], [3, 5]];
    let j = rational(2, &[0, -1, 1, 0]);
    let g: BTreeMap<(usize, usize), Matrix> = nerve
        .faces_of_size(2)
        .map(|e| {
            let m = if w.iter().any(|x| x[..] == e[..]) { j.clone() } else { Matrix::identity(2) };
            ((e[0], e[1]), m)
        })
        .collect();
    let alpha = induced_twist(&nerve, &g).expect("unit twist");
    let b = TwistedBundle::from_rational(&nerve, 2, &g);
    Example { complex: b.to_complex(), alpha, nerve }
}

/// Rank-2 bundle on the torus with `g_ij = X^{a_ij} Z^{b_ij}` for anticommuting `X`, `Z`
/// and generators `a`, `b` of `H¹(T², ℤ/2)`.
pub fn torus_bundle() -> Example {
    let nerve = torus();
    let a = [[0, 1], [0, 3], [1, 5], [2, 3], [3, 5], [5, 6]];
    let b = [[0, 1], [0, 4], [0, 5], [1, 3], [3, 4], [4, 6]];
    let x = rational(2, &[0, 1, 1, 0]);
    let z = rational(2, &[1, 0, 0, -1]);
    let g: BTreeMap<(usize, usize), Matrix> = nerve
        .faces_of_size(2)
        .map(|e| {
            let mut m = Matrix::identity(2);
            if a.iter().any(|v| v[..] == e[..]) {
                m = m.mul(&x);
            }
            if b.iter().any(|v| v[..] == e[..]) {
                m = m.mul(&z);
            }
            ((e[0], e[1]), m)
        })
        .collect();
    let alpha = induced_twist(&nerve, &g).expect("unit twist");
    let b = TwistedBundle::from_rational(&nerve, 2, &g);
    Example { complex: b.to_complex(), alpha, nerve }
}

/// `v0 → w` with `d = 1` plus a free `v1` in degree 0, trivially glued on the circle.
pub fn circle_complex() -> Example {
    let nerve = circle();
    let degrees = vec![0, 0, 1];
    let d = rational(3, &[0, 0, 0, 0, 0, 0, 1, 0, 0]);
    complex_on(nerve, degrees, &d)
}

/// `v → w` with `d = 1` on every open: contractible.
pub fn circle_cone() -> Example {
    complex_on(circle(), vec![0, 1], &rational(2, &[0, 0, 1, 0]))
}

fn complex_on(nerve: RingedNerve, degrees: Vec<i32>, d: &Matrix) -> Example {
    let r = degrees.len();
    let differentials = (0..nerve.vertices().len())
        .map(|v| (v, AlgMatrix::from_rational(nerve.algebra(&[v]), d)))
        .collect();
    let transitions = TwistedBundle::trivial(&nerve, r).transitions;
    Example { complex: TwistedComplex { degrees, differentials, transitions }, alpha: BrauerCocycle::trivial(), nerve }
}
