use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::forms::{monomials, Form, Monomial};
use super::{CechComplex, SemicosimplicialDgla};
use crate::dgla::Dgla;
use crate::homalg::{kernel_with_free_columns, vec_is_zero, CochainComplex, GradedSpace, Matrix, Scalar};
use crate::{Error, Result};

/// Element of `∏_{n≤N} Ωₙ ⊗ gₙ`: per level, form monomial ↦ vector in `gₙ`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TotElement {
    pub levels: Vec<BTreeMap<Monomial, Vec<Scalar>>>,
}

fn sign(even: bool) -> Scalar {
    if even {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

impl TotElement {
    pub fn zero(top: usize) -> Self {
        TotElement { levels: vec![BTreeMap::new(); top + 1] }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    fn add_term(&mut self, n: usize, m: Monomial, v: &[Scalar], c: &Scalar) {
        if c.is_zero() || vec_is_zero(v) {
            return;
        }
        let len = v.len();
        let slot = self.levels[n].entry(m.clone()).or_insert_with(|| vec![Scalar::zero(); len]);
        for (a, b) in slot.iter_mut().zip(v) {
            *a += c * b;
        }
        if vec_is_zero(slot) {
            self.levels[n].remove(&m);
        }
    }

    /// Adds `ω ⊗ v` at level `n`.
    pub fn add_form(&mut self, n: usize, form: &Form, v: &[Scalar]) {
        for (m, c) in form.terms() {
            self.add_term(n, m.clone(), v, c);
        }
    }

    pub fn add(&self, other: &TotElement) -> TotElement {
        let mut out = self.clone();
        for (n, lvl) in other.levels.iter().enumerate() {
            for (m, v) in lvl {
                out.add_term(n, m.clone(), v, &Scalar::one());
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> TotElement {
        let mut out = TotElement::zero(self.top());
        for (n, lvl) in self.levels.iter().enumerate() {
            for (m, v) in lvl {
                out.add_term(n, m.clone(), v, c);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(BTreeMap::is_empty)
    }

    pub fn max_weight(&self) -> usize {
        self.levels.iter().flat_map(|l| l.keys().map(Monomial::weight)).max().unwrap_or(0)
    }

    /// `d(ω ⊗ v) = dω ⊗ v + (−1)^{|ω|} ω ⊗ dv`.
    pub fn d(&self, g: &SemicosimplicialDgla) -> TotElement {
        let mut out = TotElement::zero(self.top());
        for (n, lvl) in self.levels.iter().enumerate() {
            for (m, v) in lvl {
                let w = Form::monomial(m.clone(), Scalar::one());
                out.add_form(n, &w.d(), v);
                out.add_term(n, m.clone(), &g.level(n).d(v), &sign(m.form_degree() % 2 == 0));
            }
        }
        out
    }

    /// `[ω ⊗ v, η ⊗ w] = (−1)^{|v||η|} ωη ⊗ [v, w]`.
    pub fn bracket(&self, other: &TotElement, g: &SemicosimplicialDgla) -> TotElement {
        let mut out = TotElement::zero(self.top());
        for (n, (lx, ly)) in self.levels.iter().zip(&other.levels).enumerate() {
            let l = g.level(n);
            for (a, v) in lx {
                for p in l.space().degrees().collect::<Vec<_>>() {
                    let vp = l.space().embed(p, l.space().component(v, p));
                    if vec_is_zero(&vp) {
                        continue;
                    }
                    for (b, w) in ly {
                        let s = sign((p.rem_euclid(2) as usize * b.form_degree()) % 2 == 0);
                        let prod = Form::monomial(a.clone(), s).mul(&Form::monomial(b.clone(), Scalar::one()));
                        out.add_form(n, &prod, &l.bracket(&vp, w));
                    }
                }
            }
        }
        out
    }

    /// First `(n, k)` with `(δ_k^* ⊗ id) xₙ ≠ (id ⊗ δ_k) xₙ₋₁`.
    pub fn compatibility_defect(&self, g: &SemicosimplicialDgla) -> Option<(usize, usize)> {
        for n in 1..=self.top() {
            for k in 0..=n {
                if !compatibility(g, self, n, k).is_zero() {
                    return Some((n, k));
                }
            }
        }
        None
    }
}

/// `(δ_k^* ⊗ id) xₙ − (id ⊗ δ_k) xₙ₋₁`, stored at level `n − 1`.
fn compatibility(g: &SemicosimplicialDgla, x: &TotElement, n: usize, k: usize) -> TotElement {
    let mut out = TotElement::zero(x.top());
    for (m, v) in &x.levels[n] {
        out.add_form(n - 1, &Form::monomial(m.clone(), Scalar::one()).face_pullback(k), v);
    }
    for (m, v) in &x.levels[n - 1] {
        out.add_term(n - 1, m.clone(), &g.face(n, k).apply(v), &-Scalar::one());
    }
    out
}

/// One ambient coordinate: level, form monomial, basis index in `gₙ`.
type Slot = (usize, Monomial, usize);

/// `Tot_TW` truncated at level `N` and form weight `D`, as a cochain complex with an
/// explicit basis in every degree.
#[derive(Clone, Debug)]
pub struct ThomWhitney {
    top: usize,
    max_weight: usize,
    dims: Vec<usize>,
    /// Ambient slots of each total degree.
    slots: BTreeMap<i32, Vec<Slot>>,
    position: HashMap<Slot, (i32, usize)>,
    /// Per degree: basis elements (ambient coordinates) and the free positions that give
    /// coordinates on the kernel.
    basis: BTreeMap<i32, Vec<Vec<Scalar>>>,
    free: BTreeMap<i32, Vec<usize>>,
    complex: CochainComplex,
}

fn unit_element(top: usize, slot: &Slot, dim: usize) -> TotElement {
    let mut x = TotElement::zero(top);
    let mut v = vec![Scalar::zero(); dim];
    v[slot.2] = Scalar::one();
    x.levels[slot.0].insert(slot.1.clone(), v);
    x
}

impl ThomWhitney {
    pub fn new(g: &SemicosimplicialDgla, top: usize, max_weight: usize) -> Result<Self> {
        if top > g.top() {
            return Err(Error::input(format!("level {top} exceeds the tower (top level {})", g.top())));
        }
        if max_weight < top {
            return Err(Error::unsupported(format!(
                "weight bound {max_weight} is below the level {top}; Whitney forms are not representable"
            )));
        }
        let mut slots: BTreeMap<i32, Vec<Slot>> = BTreeMap::new();
        for n in 0..=top {
            let s = g.level(n).space();
            for m in monomials(n, max_weight) {
                for i in 0..s.total_dim() {
                    let deg = m.form_degree() as i32 + s.degree_of(i);
                    slots.entry(deg).or_default().push((n, m.clone(), i));
                }
            }
        }
        let mut position = HashMap::new();
        for (&deg, list) in &slots {
            for (j, s) in list.iter().enumerate() {
                position.insert(s.clone(), (deg, j));
            }
        }
        let mut tw = ThomWhitney {
            top,
            max_weight,
            dims: (0..=top).map(|n| g.level(n).dim()).collect(),
            slots,
            position,
            basis: BTreeMap::new(),
            free: BTreeMap::new(),
            complex: CochainComplex::zero_differential(GradedSpace::zero()),
        };
        let degrees: Vec<i32> = tw.slots.keys().copied().collect();
        for &deg in &degrees {
            let cols: Vec<TotElement> = tw.slots[&deg]
                .iter()
                .map(|s| unit_element(top, s, g.level(s.0).dim()))
                .collect();
            // rows: compatibility defects, keyed by (n, k, monomial, index)
            let mut rows: HashMap<(usize, usize, Monomial, usize), usize> = HashMap::new();
            let mut entries: Vec<Vec<(usize, Scalar)>> = Vec::new();
            for x in &cols {
                let mut col = Vec::new();
                for n in 1..=top {
                    for k in 0..=n {
                        for (m, v) in &compatibility(g, x, n, k).levels[n - 1] {
                            for (i, c) in v.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let next = rows.len();
                                let r = *rows.entry((n, k, m.clone(), i)).or_insert(next);
                                col.push((r, c.clone()));
                            }
                        }
                    }
                }
                entries.push(col);
            }
            let mut mat = Matrix::zeros(rows.len(), cols.len());
            for (j, col) in entries.into_iter().enumerate() {
                for (r, c) in col {
                    mat[(r, j)] += c;
                }
            }
            let (kernel, free) = kernel_with_free_columns(&mat);
            tw.basis.insert(deg, kernel);
            tw.free.insert(deg, free);
        }
        let mut labels: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        for (&deg, b) in &tw.basis {
            labels.insert(deg, (0..b.len()).map(|j| format!("tw{deg}:{j}")).collect());
        }
        let space = GradedSpace::new(labels)?;
        let mut blocks = BTreeMap::new();
        for (&deg, b) in &tw.basis {
            if b.is_empty() || space.dim(deg + 1) == 0 {
                continue;
            }
            let mut block = Matrix::zeros(space.dim(deg + 1), b.len());
            for (j, _) in b.iter().enumerate() {
                let dx = tw.element(deg, j).d(g);
                let coords = tw.coordinates(&dx, deg + 1)?;
                for (r, c) in coords.into_iter().enumerate() {
                    block[(r, j)] = c;
                }
            }
            blocks.insert(deg, block);
        }
        tw.complex = CochainComplex::from_blocks(space, blocks)?;
        Ok(tw)
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    /// The `j`-th basis element of degree `deg`.
    pub fn element(&self, deg: i32, j: usize) -> TotElement {
        let mut x = TotElement::zero(self.top);
        for (s, c) in self.slots[&deg].iter().zip(&self.basis[&deg][j]) {
            if c.is_zero() {
                continue;
            }
            let dim = self.dims[s.0];
            let mut v = vec![Scalar::zero(); dim];
            v[s.2] = c.clone();
            x.add_term(s.0, s.1.clone(), &v, &Scalar::one());
        }
        x
    }

    /// Coordinates of a homogeneous element of degree `deg` in the basis; errors when the
    /// element is not in the truncated totalization.
    pub fn coordinates(&self, x: &TotElement, deg: i32) -> Result<Vec<Scalar>> {
        let n = self.slots.get(&deg).map_or(0, Vec::len);
        let mut ambient = vec![Scalar::zero(); n];
        for (lvl, terms) in x.levels.iter().enumerate() {
            for (m, v) in terms {
                for (i, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    match self.position.get(&(lvl, m.clone(), i)) {
                        Some(&(d, j)) if d == deg => ambient[j] = c.clone(),
                        Some(_) => return Err(Error::input(format!("element is not homogeneous of degree {deg}"))),
                        None => {
                            return Err(Error::unsupported(format!(
                                "element leaves the weight-{} truncation",
                                self.max_weight
                            )))
                        }
                    }
                }
            }
        }
        let Some(free) = self.free.get(&deg) else {
            return Ok(vec![]);
        };
        let coords: Vec<Scalar> = free.iter().map(|&j| ambient[j].clone()).collect();
        let mut back = vec![Scalar::zero(); n];
        for (c, b) in coords.iter().zip(&self.basis[&deg]) {
            for (a, y) in back.iter_mut().zip(b) {
                *a += c * y;
            }
        }
        if back != ambient {
            return Err(Error::input("element does not satisfy the face compatibilities"));
        }
        Ok(coords)
    }

    /// The DGLA structure, available when brackets of basis elements stay within the
    /// weight truncation.
    pub fn dgla(&self, g: &SemicosimplicialDgla) -> Result<Dgla> {
        let space = self.complex.space();
        let n = space.total_dim();
        let elems: Vec<(i32, TotElement)> = (0..n)
            .map(|i| {
                let deg = space.degree_of(i);
                (deg, self.element(deg, i - space.offset(deg)))
            })
            .collect();
        let mut table = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                let br = elems[i].1.bracket(&elems[j].1, g);
                if br.is_zero() {
                    continue;
                }
                let deg = elems[i].0 + elems[j].0;
                let coords = self.coordinates(&br, deg)?;
                let o = space.offset(deg);
                let v: Vec<(usize, Scalar)> =
                    coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (o + k, c)).collect();
                if !v.is_empty() {
                    table.insert((i, j), v);
                }
            }
        }
        Ok(Dgla::new_unchecked(self.complex.clone(), table))
    }

    /// Whitney integration into the Čech total complex.
    pub fn integrate(&self, g: &SemicosimplicialDgla, cech: &CechComplex, x: &TotElement) -> Vec<Scalar> {
        whitney_integrate_cochain(g, cech, x)
    }

    /// Whitney section of a Čech cochain up to level `N`.
    pub fn section(&self, g: &SemicosimplicialDgla, cech: &CechComplex, c: &[Scalar]) -> TotElement {
        whitney_section_cochain(g, cech, c, self.top)
    }
}

/// Whitney integration into the Čech total complex: the top-degree part of `xₙ ⊗ v`
/// with `v ∈ gₙᵖ` goes to `(−1)^{np} ∫_{Δⁿ} xₙ · v` in bidegree `(n, p)`. Needs no weight
/// truncation.
pub fn whitney_integrate_cochain(g: &SemicosimplicialDgla, cech: &CechComplex, x: &TotElement) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); cech.complex.space().total_dim()];
    for (n, terms) in x.levels.iter().enumerate() {
        let s = g.level(n).space();
        for (m, v) in terms {
            if m.form_degree() != n {
                continue;
            }
            let w = Form::monomial(m.clone(), Scalar::one()).integrate();
            for p in s.degrees().collect::<Vec<_>>() {
                let Some(o) = cech.slot(n, p) else { continue };
                let c = &w * sign((n * p.rem_euclid(2) as usize) % 2 == 0);
                for (i, a) in s.component(v, p).iter().enumerate() {
                    out[o + i] += &c * a;
                }
            }
        }
    }
    out
}

/// Whitney section of a Čech cochain (components above level `top` are ignored):
/// `Σ_{I ⊆ [k]} (−1)^{np} ω_I ⊗ f_I(cₙ)` at level `k`.
pub fn whitney_section_cochain(g: &SemicosimplicialDgla, cech: &CechComplex, c: &[Scalar], top: usize) -> TotElement {
    let mut x = TotElement::zero(top);
    for n in 0..=top.min(g.top()) {
        let s = g.level(n).space();
        for p in s.degrees().collect::<Vec<_>>() {
            let local = cech.piece(g, c, n, p);
            if vec_is_zero(local) {
                continue;
            }
            let v = s.embed(p, local);
            let eps = sign((n * p.rem_euclid(2) as usize) % 2 == 0);
            for k in n..=top {
                for subset in subsets(k + 1, n + 1) {
                    let missing: Vec<usize> = (0..=k).filter(|i| !subset.contains(i)).collect();
                    let image = g.coface_composite(n, &missing, &v);
                    x.add_form(k, &Form::whitney(k, &subset).scale(&eps), &image);
                }
            }
        }
    }
    x
}

/// Increasing `size`-subsets of `0..n`.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    go(0, n, size, &mut cur, &mut out);
    out
}

/// `Tot_TW` truncated at level `N` and weight `D`, as a DG Lie algebra.
pub fn tot_tw(g: &SemicosimplicialDgla, top: usize, max_weight: usize) -> Result<Dgla> {
    ThomWhitney::new(g, top, max_weight)?.dgla(g)
}

/// Integration of a Tot element into the Čech complex.
pub fn whitney_integrate(tw: &ThomWhitney, g: &SemicosimplicialDgla, cech: &CechComplex, x: &TotElement) -> Vec<Scalar> {
    tw.integrate(g, cech, x)
}

/// Whitney section of a Čech cochain.
pub fn whitney_section(tw: &ThomWhitney, g: &SemicosimplicialDgla, cech: &CechComplex, c: &[Scalar]) -> TotElement {
    tw.section(g, cech, c)
}
