use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::dgla::{morphism_failure, Dgla};
use crate::homalg::{CochainComplex, GradedSpace, LinearMap, Matrix, Scalar};
use crate::{Error, Result};

/// Unvalidated tower data. `faces[n]` holds the `n + 1` maps `g_{n−1} → g_n`; `faces[0]`
/// is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTower {
    pub levels: Vec<Dgla>,
    pub faces: Vec<Vec<LinearMap>>,
}

/// `δ_h δ_k ≠ δ_{k+1} δ_h` on maps `g_{n−2} → g_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub h: usize,
    pub k: usize,
    pub n: usize,
    /// First basis label of `g_{n−2}` on which the two composites differ.
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TowerReport {
    pub violations: Vec<IdentityViolation>,
}

impl TowerReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finite semicosimplicial DG Lie algebra `g₀ ⇉ g₁ ⇶ … g_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemicosimplicialDgla {
    levels: Vec<Dgla>,
    faces: Vec<Vec<LinearMap>>,
}

fn face_name(n: usize, k: usize) -> String {
    format!("face δ_{k} into level {n}")
}

/// Checks shapes and that every face is a DGLA morphism (errors), then the identities
/// `δ_h δ_k = δ_{k+1} δ_h` for all `h ≤ k` (reported).
pub fn check_semicosimplicial(raw: &RawTower) -> Result<TowerReport> {
    if raw.levels.is_empty() {
        return Err(Error::input("tower has no levels"));
    }
    if raw.faces.len() != raw.levels.len() {
        return Err(Error::shape(format!(
            "{} levels but face lists for {} levels",
            raw.levels.len(),
            raw.faces.len()
        )));
    }
    for (n, fs) in raw.faces.iter().enumerate() {
        let expected = if n == 0 { 0 } else { n + 1 };
        if fs.len() != expected {
            return Err(Error::shape(format!("level {n} has {} faces, expected {expected}", fs.len())));
        }
        for (k, f) in fs.iter().enumerate() {
            let (src, tgt) = (&raw.levels[n - 1], &raw.levels[n]);
            if f.degree_shift != 0 || f.source != *src.space() || f.target != *tgt.space() {
                return Err(Error::shape(format!("{} does not fit the levels", face_name(n, k))));
            }
            if let Some(why) = morphism_failure(src, tgt, f) {
                return Err(Error::input(format!("{} is not a DGLA morphism: {why}", face_name(n, k))));
            }
        }
    }
    let mut report = TowerReport::default();
    for n in 2..raw.levels.len() {
        for k in 0..n {
            for h in 0..=k {
                let lhs = raw.faces[n][h].compose(&raw.faces[n - 1][k]);
                let rhs = raw.faces[n][k + 1].compose(&raw.faces[n - 1][h]);
                if !lhs.equals(&rhs) {
                    let s = raw.levels[n - 2].space();
                    let witness = (0..s.total_dim())
                        .find(|&i| {
                            let mut e = vec![Scalar::zero(); s.total_dim()];
                            e[i] = Scalar::one();
                            lhs.apply(&e) != rhs.apply(&e)
                        })
                        .map(|i| s.label(i).to_string())
                        .unwrap_or_default();
                    report.violations.push(IdentityViolation { h, k, n, witness });
                }
            }
        }
    }
    Ok(report)
}

impl SemicosimplicialDgla {
    /// Validates; a violated identity is an input error naming `(h, k, n)`.
    pub fn new(raw: RawTower) -> Result<Self> {
        let report = check_semicosimplicial(&raw)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::input(format!(
                "semicosimplicial identity fails at (h, k, n) = ({}, {}, {}) on {}",
                v.h, v.k, v.n, v.witness
            )));
        }
        Ok(SemicosimplicialDgla { levels: raw.levels, faces: raw.faces })
    }

    /// `g ⇉ g ⇶ … g` with every face the identity, levels `0..=top`.
    pub fn constant(g: &Dgla, top: usize) -> Self {
        let id = LinearMap::identity(g.space());
        SemicosimplicialDgla {
            levels: vec![g.clone(); top + 1],
            faces: (0..=top).map(|n| if n == 0 { vec![] } else { vec![id.clone(); n + 1] }).collect(),
        }
    }

    /// Čech tower of a presheaf on an ordered simplicial complex.
    ///
    /// `simplices[n]` lists the `n`-simplices as increasing vertex lists; levels above the
    /// last listed dimension (up to `top`) are zero. Level `n` is `∏_σ sections(σ)` and
    /// `(δ_k x)_σ = restrict(σ∖σ_k, σ)(x_{σ∖σ_k})`.
    pub fn cech(
        simplices: &[Vec<Vec<usize>>],
        top: usize,
        sections: impl Fn(&[usize]) -> Result<Dgla>,
        restrict: impl Fn(&[usize], &[usize]) -> Result<LinearMap>,
    ) -> Result<Self> {
        let name = |s: &[usize]| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-");
        let mut factors: Vec<Vec<(String, Dgla)>> = Vec::new();
        let mut levels = Vec::new();
        for n in 0..=top {
            let list = simplices.get(n).map(Vec::as_slice).unwrap_or(&[]);
            let fs = list.iter().map(|s| Ok((name(s), sections(s)?))).collect::<Result<Vec<_>>>()?;
            levels.push(Dgla::product(&fs)?);
            factors.push(fs);
        }
        let mut faces = vec![vec![]];
        for n in 1..=top {
            let list = simplices.get(n).map(Vec::as_slice).unwrap_or(&[]);
            let below = simplices.get(n - 1).map(Vec::as_slice).unwrap_or(&[]);
            let mut fs = Vec::new();
            for k in 0..=n {
                let mut parts = Vec::new();
                for (si, s) in list.iter().enumerate() {
                    let mut t = s.clone();
                    t.remove(k);
                    let ti = below.iter().position(|b| *b == t).ok_or_else(|| {
                        Error::input(format!("face {} of simplex {} is missing", name(&t), name(s)))
                    })?;
                    parts.push((ti, si, restrict(&t, s)?));
                }
                fs.push(Dgla::product_map(&levels[n - 1], &factors[n - 1], &levels[n], &factors[n], &parts)?);
            }
            faces.push(fs);
        }
        SemicosimplicialDgla::new(RawTower { levels, faces })
    }

    /// Čech tower of the constant presheaf `g`.
    pub fn constant_sheaf(g: &Dgla, simplices: &[Vec<Vec<usize>>], top: usize) -> Result<Self> {
        Self::cech(simplices, top, |_| Ok(g.clone()), |_, _| Ok(LinearMap::identity(g.space())))
    }

    pub fn to_raw(&self) -> RawTower {
        RawTower { levels: self.levels.clone(), faces: self.faces.clone() }
    }

    /// Index of the last level.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &Dgla {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[Dgla] {
        &self.levels
    }

    /// `δ_k : g_{n−1} → g_n`.
    pub fn face(&self, n: usize, k: usize) -> &LinearMap {
        &self.faces[n][k]
    }

    /// Composite `g_n → g_{n+r}` of the faces inserting the indices `missing` (increasing)
    /// in that order.
    pub fn coface_composite(&self, n: usize, missing: &[usize], x: &[Scalar]) -> Vec<Scalar> {
        let mut v = x.to_vec();
        for (step, &j) in missing.iter().enumerate() {
            v = self.faces[n + step + 1][j].apply(&v);
        }
        v
    }

    pub fn check(&self) -> TowerReport {
        check_semicosimplicial(&self.to_raw()).unwrap_or_default()
    }
}

/// The total complex `Cᵐ = ⊕_{n+p=m} g_nᵖ` with `D = d + (−1)ᵖ Σ_k (−1)ᵏ δ_k` on
/// bidegree `(n, p)`. Basis labels are `"n:label"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechComplex {
    pub complex: CochainComplex,
    /// Global offset of the `g_nᵖ` block.
    slots: BTreeMap<(usize, i32), usize>,
}

impl CechComplex {
    /// Offset of the `g_nᵖ` block inside global coordinates, if present.
    pub fn slot(&self, n: usize, p: i32) -> Option<usize> {
        self.slots.get(&(n, p)).copied()
    }

    /// The `g_nᵖ` part of a global vector (zero-length if the block is absent).
    pub fn piece<'a>(&self, g: &SemicosimplicialDgla, v: &'a [Scalar], n: usize, p: i32) -> &'a [Scalar] {
        match self.slot(n, p) {
            Some(o) => &v[o..o + g.level(n).space().dim(p)],
            None => &[],
        }
    }

    /// Global vector with `local ∈ g_nᵖ` placed in its block.
    pub fn place(&self, n: usize, p: i32, local: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.complex.space().total_dim()];
        if let Some(o) = self.slot(n, p) {
            for (i, c) in local.iter().enumerate() {
                v[o + i] = c.clone();
            }
        }
        v
    }
}

pub fn cech_complex(g: &SemicosimplicialDgla) -> Result<CechComplex> {
    let mut labels: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let mut local: BTreeMap<(usize, i32), (i32, usize)> = BTreeMap::new();
    for (n, l) in g.levels().iter().enumerate() {
        for p in l.space().degrees().collect::<Vec<_>>() {
            let m = n as i32 + p;
            let ls = labels.entry(m).or_default();
            local.insert((n, p), (m, ls.len()));
            ls.extend(l.space().labels(p).iter().map(|s| format!("{n}:{s}")));
        }
    }
    let space = GradedSpace::new(labels)?;
    let slots = local.iter().map(|(&k, &(m, o))| (k, space.offset(m) + o)).collect();
    let mut blocks: BTreeMap<i32, Matrix> = BTreeMap::new();
    for (&(n, p), &(m, src)) in &local {
        let l = g.level(n);
        let block = blocks
            .entry(m)
            .or_insert_with(|| Matrix::zeros(space.dim(m + 1), space.dim(m)));
        let width = l.space().dim(p);
        if let Some(&(_, tgt)) = local.get(&(n, p + 1)) {
            let d = l.complex().d(p);
            for r in 0..d.rows() {
                for c in 0..width {
                    block[(tgt + r, src + c)] += &d[(r, c)];
                }
            }
        }
        if let Some(&(_, tgt)) = local.get(&(n + 1, p)) {
            let sign_p = if p.rem_euclid(2) == 0 { 1 } else { -1 };
            for k in 0..=n + 1 {
                let f = g.face(n + 1, k).block(p);
                let s = Scalar::from_integer((sign_p * if k % 2 == 0 { 1 } else { -1 }).into());
                for r in 0..f.rows() {
                    for c in 0..width {
                        if !f[(r, c)].is_zero() {
                            block[(tgt + r, src + c)] += &s * &f[(r, c)];
                        }
                    }
                }
            }
        }
    }
    blocks.retain(|&m, b| space.dim(m + 1) > 0 && !b.is_zero());
    let complex = CochainComplex::from_blocks(space, blocks)?;
    Ok(CechComplex { complex, slots })
}

/// All faces of the simplicial complex generated by `maximal`, by dimension, each an
/// increasing vertex list, sorted.
pub fn simplices_of(maximal: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let mut all: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    for m in maximal {
        let mut v = m.clone();
        v.sort_unstable();
        v.dedup();
        for mask in 1u64..(1 << v.len()) {
            all.insert((0..v.len()).filter(|i| mask >> i & 1 == 1).map(|i| v[i]).collect());
        }
    }
    let top = all.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![Vec::new(); top];
    for s in all {
        out[s.len() - 1].push(s);
    }
    out
}
