use std::collections::{BTreeMap, BTreeSet};

use crate::homalg::{CommAlgebra, Matrix, Scalar};
use crate::{Error, Result};

/// Increasing list of vertex indices.
pub type Face = Vec<usize>;

/// Unvalidated nerve data. Faces missing from `algebras` carry `ℚ`. A missing restriction
/// is the identity when both algebras agree, and otherwise composed from codimension-one
/// restrictions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawNerve {
    pub vertices: Vec<String>,
    pub faces: Vec<Face>,
    pub algebras: BTreeMap<Face, CommAlgebra>,
    /// `(τ, σ)` with `τ ⊂ σ`: a `dim A_σ × dim A_τ` matrix.
    pub restrictions: BTreeMap<(Face, Face), Matrix>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, s: String) {
        self.violations.push(s);
    }
}

/// A finite cover's nerve with a commutative ℚ-algebra of sections on every face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingedNerve {
    vertices: Vec<String>,
    faces: Vec<Face>,
    algebras: BTreeMap<Face, CommAlgebra>,
    restrictions: BTreeMap<(Face, Face), Matrix>,
}

fn show(labels: &[String], f: &[usize]) -> String {
    let parts: Vec<&str> = f.iter().map(|&v| labels.get(v).map(String::as_str).unwrap_or("?")).collect();
    format!("{{{}}}", parts.join(","))
}

fn proper_subsets(f: &[usize]) -> Vec<Face> {
    let n = f.len();
    (1..(1usize << n) - 1)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect())
        .collect()
}

fn is_subset(t: &[usize], s: &[usize]) -> bool {
    t.iter().all(|v| s.contains(v))
}

struct Assembled {
    faces: Vec<Face>,
    algebras: BTreeMap<Face, CommAlgebra>,
    restrictions: BTreeMap<(Face, Face), Matrix>,
}

fn assemble(raw: &RawNerve, report: &mut CheckReport) -> Option<Assembled> {
    let labels = &raw.vertices;
    let show = |f: &[usize]| show(labels, f);
    let distinct: BTreeSet<&String> = labels.iter().collect();
    if distinct.len() != labels.len() {
        report.push("vertex labels are not distinct".into());
    }
    let mut faces: BTreeSet<Face> = BTreeSet::new();
    for f in &raw.faces {
        if f.is_empty() || f.windows(2).any(|w| w[0] >= w[1]) || f.iter().any(|&v| v >= labels.len()) {
            report.push(format!("face {f:?} is not an increasing list of vertices"));
            continue;
        }
        faces.insert(f.clone());
    }
    for v in 0..labels.len() {
        faces.insert(vec![v]);
    }
    for f in &faces {
        for t in proper_subsets(f) {
            if !faces.contains(&t) {
                report.push(format!("face {} is missing its subface {}", show(f), show(&t)));
            }
        }
    }
    if !report.is_valid() {
        return None;
    }
    let mut faces: Vec<Face> = faces.into_iter().collect();
    faces.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    for f in raw.algebras.keys() {
        if !faces.contains(f) {
            report.push(format!("algebra given on {f:?}, which is not a face"));
        }
    }
    let algebras: BTreeMap<Face, CommAlgebra> = faces
        .iter()
        .map(|f| (f.clone(), raw.algebras.get(f).cloned().unwrap_or_else(CommAlgebra::rationals)))
        .collect();
    for ((t, s), m) in &raw.restrictions {
        if !faces.contains(t) || !faces.contains(s) || t == s || !is_subset(t, s) {
            report.push(format!("restriction given on ({t:?},{s:?}), which is not a pair of nested faces"));
            continue;
        }
        if m.shape() != (algebras[s].dim(), algebras[t].dim()) {
            report.push(format!("restriction at ({},{}) has the wrong shape", show(t), show(s)));
        }
    }
    if !report.is_valid() {
        return None;
    }
    let mut restrictions: BTreeMap<(Face, Face), Matrix> = BTreeMap::new();
    for s in &faces {
        let mut subs = proper_subsets(s);
        subs.sort_by_key(|t| std::cmp::Reverse(t.len()));
        for t in subs {
            let m = match raw.restrictions.get(&(t.clone(), s.clone())) {
                Some(m) => m.clone(),
                None if algebras[&t] == algebras[s] => Matrix::identity(algebras[s].dim()),
                None if t.len() + 1 == s.len() => {
                    report.push(format!("missing restriction at ({},{})", show(&t), show(s)));
                    continue;
                }
                None => {
                    // through the subface obtained by adding the smallest missing vertex
                    let v = *s.iter().find(|v| !t.contains(v)).expect("proper subset");
                    let mut mid = t.clone();
                    mid.push(v);
                    mid.sort();
                    match (restrictions.get(&(t.clone(), mid.clone())), restrictions.get(&(mid.clone(), s.clone()))) {
                        (Some(a), Some(b)) => b.mul(a),
                        _ => continue,
                    }
                }
            };
            restrictions.insert((t, s.clone()), m);
        }
    }
    Some(Assembled { faces, algebras, restrictions })
}

/// Checks faces, unital multiplicative restrictions and functoriality.
pub fn validate_nerve(raw: &RawNerve) -> CheckReport {
    let mut report = CheckReport::default();
    let Some(a) = assemble(raw, &mut report) else { return report };
    let labels = &raw.vertices;
    for ((t, s), m) in &a.restrictions {
        let (at, as_) = (&a.algebras[t], &a.algebras[s]);
        if m.apply(&at.one()) != as_.one() {
            report.push(format!("restriction not unital at ({},{})", show(labels, t), show(labels, s)));
        } else if !at.is_homomorphism(as_, m) {
            report.push(format!("restriction not multiplicative at ({},{})", show(labels, t), show(labels, s)));
        }
    }
    for ((t, u), first) in &a.restrictions {
        for ((u2, s), second) in &a.restrictions {
            if u2 != u {
                continue;
            }
            if let Some(direct) = a.restrictions.get(&(t.clone(), s.clone())) {
                if second.mul(first) != *direct {
                    report.push(format!(
                        "restrictions do not compose at ({},{},{})",
                        show(labels, t),
                        show(labels, u),
                        show(labels, s)
                    ));
                }
            }
        }
    }
    report
}

impl RingedNerve {
    pub fn new(raw: &RawNerve) -> Result<Self> {
        let report = validate_nerve(raw);
        if let Some(v) = report.violations.first() {
            return Err(Error::input(v.clone()));
        }
        let a = assemble(raw, &mut CheckReport::default()).expect("validated");
        Ok(RingedNerve { vertices: raw.vertices.clone(), faces: a.faces, algebras: a.algebras, restrictions: a.restrictions })
    }

    /// `ℚ` on every face, vertices labelled `0, 1, …`, generated by `maximal`.
    pub fn constant(vertices: usize, maximal: &[Face]) -> Result<Self> {
        let mut faces: BTreeSet<Face> = BTreeSet::new();
        for m in maximal {
            faces.insert(m.clone());
            faces.extend(proper_subsets(m));
        }
        RingedNerve::new(&RawNerve {
            vertices: (0..vertices).map(|v| v.to_string()).collect(),
            faces: faces.into_iter().collect(),
            algebras: BTreeMap::new(),
            restrictions: BTreeMap::new(),
        })
    }

    pub fn to_raw(&self) -> RawNerve {
        RawNerve {
            vertices: self.vertices.clone(),
            faces: self.faces.clone(),
            algebras: self.algebras.iter().filter(|(_, a)| a.dim() > 1).map(|(f, a)| (f.clone(), a.clone())).collect(),
            restrictions: self
                .restrictions
                .iter()
                .filter(|((t, s), m)| t.len() + 1 == s.len() && **m != Matrix::identity(m.rows()))
                .map(|(k, m)| (k.clone(), m.clone()))
                .collect(),
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// All faces, ordered by size then lexicographically.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn is_face(&self, f: &[usize]) -> bool {
        self.algebras.contains_key(f)
    }

    pub fn dimension(&self) -> usize {
        self.faces.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    /// Faces with `n + 1` vertices.
    pub fn faces_of_size(&self, size: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.len() == size)
    }

    /// Faces grouped by dimension, as used by Čech towers.
    pub fn simplices(&self) -> Vec<Vec<Face>> {
        (0..=self.dimension()).map(|n| self.faces_of_size(n + 1).cloned().collect()).collect()
    }

    pub fn algebra(&self, f: &[usize]) -> &CommAlgebra {
        &self.algebras[f]
    }

    /// Whether every face carries `ℚ`.
    pub fn is_constant(&self) -> bool {
        self.algebras.values().all(|a| a.dim() == 1)
    }

    /// `ρ_{τσ}` as a matrix; the identity when `τ = σ`.
    pub fn restriction(&self, t: &[usize], s: &[usize]) -> Matrix {
        if t == s {
            return Matrix::identity(self.algebras[s].dim());
        }
        self.restrictions[&(t.to_vec(), s.to_vec())].clone()
    }

    pub fn restrict(&self, t: &[usize], s: &[usize], x: &[Scalar]) -> Vec<Scalar> {
        if t == s {
            return x.to_vec();
        }
        self.restrictions[&(t.to_vec(), s.to_vec())].apply(x)
    }

    pub fn show(&self, f: &[usize]) -> String {
        show(&self.vertices, f)
    }
}
