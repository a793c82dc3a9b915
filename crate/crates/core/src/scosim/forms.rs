use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::homalg::scalar::factorial;
use crate::homalg::Scalar;

/// `t₁^{a₁}…t_n^{a_n} dt_I` on `Δⁿ`, in the affine coordinates `t₁,…,t_n`
/// (`t₀ = 1 − Σtᵢ`, `dt₀ = −Σdtᵢ`). Bit `i` of `dts` stands for `dt_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exps: Vec<u32>,
    pub dts: u32,
}

impl Monomial {
    pub fn form_degree(&self) -> usize {
        self.dts.count_ones() as usize
    }

    /// Polynomial degree plus form degree.
    pub fn weight(&self) -> usize {
        self.exps.iter().sum::<u32>() as usize + self.form_degree()
    }
}

/// All monomials on `Δⁿ` of weight at most `max_weight`, sorted.
pub fn monomials(n: usize, max_weight: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for dts in 0u32..(1 << n) {
        let fd = dts.count_ones() as usize;
        if fd > max_weight {
            continue;
        }
        let mut exps = vec![0u32; n];
        loop {
            out.push(Monomial { exps: exps.clone(), dts });
            // next exponent vector with total ≤ max_weight − fd
            let budget = (max_weight - fd) as u32;
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                exps[i] += 1;
                if exps.iter().sum::<u32>() <= budget {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    out.sort();
    out
}

/// Polynomial differential form on `Δⁿ` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    n: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

/// Sign of `dt_A ∧ dt_B` relative to the sorted product, or `None` if they overlap.
fn wedge_sign(a: u32, b: u32) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    for j in 0..32 {
        if b >> j & 1 == 1 {
            swaps += a.checked_shr(j + 1).unwrap_or(0).count_ones();
        }
    }
    Some(swaps % 2 == 0)
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Form { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Form::monomial(Monomial { exps: vec![0; n], dts: 0 }, c)
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut f = Form::zero(m.exps.len());
        if !c.is_zero() {
            f.terms.insert(m, c);
        }
        f
    }

    /// `tᵢ` for `0 ≤ i ≤ n`.
    pub fn t(n: usize, i: usize) -> Self {
        if i == 0 {
            let mut f = Form::constant(n, Scalar::one());
            for j in 1..=n {
                f = f.sub(&Form::t(n, j));
            }
            return f;
        }
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        Form::monomial(Monomial { exps, dts: 0 }, Scalar::one())
    }

    /// `dtᵢ` for `0 ≤ i ≤ n`.
    pub fn dt(n: usize, i: usize) -> Self {
        if i == 0 {
            let mut f = Form::zero(n);
            for j in 1..=n {
                f = f.sub(&Form::dt(n, j));
            }
            return f;
        }
        Form::monomial(Monomial { exps: vec![0; n], dts: 1 << (i - 1) }, Scalar::one())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, m: Monomial, c: Scalar) {
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut f = self.clone();
        for (m, c) in &other.terms {
            f.insert(m.clone(), c.clone());
        }
        f
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.n);
        }
        Form { n: self.n, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Form) -> Form {
        let mut f = Form::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let Some(even) = wedge_sign(a.dts, b.dts) else { continue };
                let exps = a.exps.iter().zip(&b.exps).map(|(p, q)| p + q).collect();
                let c = x * y;
                f.insert(Monomial { exps, dts: a.dts | b.dts }, if even { c } else { -c });
            }
        }
        f
    }

    /// Exterior derivative.
    pub fn d(&self) -> Form {
        let mut f = Form::zero(self.n);
        for (m, c) in &self.terms {
            for i in 0..self.n {
                if m.exps[i] == 0 || m.dts >> i & 1 == 1 {
                    continue;
                }
                let mut exps = m.exps.clone();
                exps[i] -= 1;
                // dtᵢ moves in front of the dt's with smaller index
                let before = (m.dts & ((1 << i) - 1)).count_ones();
                let v = c * Scalar::from_integer(m.exps[i].into());
                f.insert(Monomial { exps, dts: m.dts | 1 << i }, if before % 2 == 0 { v } else { -v });
            }
        }
        f
    }

    /// Homogeneous component of form degree `p`.
    pub fn part(&self, p: usize) -> Form {
        Form {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| m.form_degree() == p).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn max_weight(&self) -> usize {
        self.terms.keys().map(Monomial::weight).max().unwrap_or(0)
    }

    /// Substitutes `t_j ↦ ts[j−1]` and `dt_j ↦ dts[j−1]` (forms on some `Δᵐ`).
    fn substitute(&self, m: usize, ts: &[Form], dts: &[Form]) -> Form {
        let mut out = Form::zero(m);
        for (mono, c) in &self.terms {
            let mut term = Form::constant(m, c.clone());
            for j in 0..self.n {
                for _ in 0..mono.exps[j] {
                    term = term.mul(&ts[j]);
                }
            }
            for j in 0..self.n {
                if mono.dts >> j & 1 == 1 {
                    term = term.mul(&dts[j]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Pullback along the `k`-th coface `Δⁿ⁻¹ → Δⁿ` (insert `0` at barycentric position `k`).
    pub fn face_pullback(&self, k: usize) -> Form {
        let m = self.n - 1;
        // barycentric t_i on Δⁿ in terms of Δⁿ⁻¹
        let image = |i: usize| -> (Form, Form) {
            if i == k {
                (Form::zero(m), Form::zero(m))
            } else {
                let j = if i < k { i } else { i - 1 };
                (Form::t(m, j), Form::dt(m, j))
            }
        };
        let (ts, dts): (Vec<Form>, Vec<Form>) = (1..=self.n).map(image).unzip();
        self.substitute(m, &ts, &dts)
    }

    /// `∫_{Δⁿ}` of the top-degree part, with `dt₁…dt_n` positively oriented.
    pub fn integrate(&self) -> Scalar {
        let top = if self.n == 0 { 0 } else { (1u32 << self.n) - 1 };
        let mut s = Scalar::zero();
        for (m, c) in &self.terms {
            if m.dts != top {
                continue;
            }
            let mut num = Scalar::one();
            for &a in &m.exps {
                num *= factorial(a as usize);
            }
            let total: usize = m.exps.iter().sum::<u32>() as usize + self.n;
            s += c * num / factorial(total);
        }
        s
    }

    /// Whitney form `ω_I = p! Σ_j (−1)ʲ t_{i_j} dt_{i_0}…dt̂_{i_j}…dt_{i_p}` on `Δⁿ`,
    /// for `I` increasing.
    pub fn whitney(n: usize, indices: &[usize]) -> Form {
        let p = indices.len() - 1;
        let mut out = Form::zero(n);
        for (j, &ij) in indices.iter().enumerate() {
            let mut term = Form::t(n, ij);
            for (l, &il) in indices.iter().enumerate() {
                if l != j {
                    term = term.mul(&Form::dt(n, il));
                }
            }
            let s = if j % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            out = out.add(&term.scale(&s));
        }
        out.scale(&factorial(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::scalar::{frac, int};
    use proptest::prelude::*;

    fn mono(exps: &[u32], dts: u32) -> Monomial {
        Monomial { exps: exps.to_vec(), dts }
    }

    /// `∫₀¹∫₀^{1−t₁} t₁ᵃ t₂ᵇ dt₂ dt₁` by expanding `(1−t₁)^{b+1}` and integrating term by term.
    fn iterated(a: u32, b: u32) -> Scalar {
        let mut s = Scalar::zero();
        let mut binom = Scalar::one();
        for k in 0..=b + 1 {
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            s += sign * &binom / Scalar::from_integer((a + k + 1).into());
            binom = binom * Scalar::from_integer((b + 1 - k).into()) / Scalar::from_integer((k + 1).into());
        }
        s / Scalar::from_integer((b + 1).into())
    }

    fn random_form(n: usize, max_weight: usize, coeffs: &[i64]) -> Form {
        let mut f = Form::zero(n);
        for (i, m) in monomials(n, max_weight).into_iter().enumerate() {
            f = f.add(&Form::monomial(m, int(coeffs[i % coeffs.len()])));
        }
        f
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials(0, 3), vec![mono(&[], 0)]);
        // 1, t, t², dt, t dt
        assert_eq!(monomials(1, 2).len(), 5);
        assert!(monomials(2, 2).iter().all(|m| m.weight() <= 2));
        assert_eq!(monomials(2, 2).len(), 6 + 6 + 1);
    }

    #[test]
    fn simple_integrals() {
        assert_eq!(Form::monomial(mono(&[1], 1), int(1)).integrate(), frac(1, 2));
        assert_eq!(Form::constant(0, int(1)).integrate(), int(1));
        assert_eq!(Form::monomial(mono(&[0, 0], 3), int(1)).integrate(), frac(1, 2));
    }

    #[test]
    fn dirichlet_formula_matches_iterated_integration() {
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(Form::monomial(mono(&[a, b], 3), int(1)).integrate(), iterated(a, b), "{a} {b}");
            }
        }
    }

    #[test]
    fn whitney_forms_have_unit_integral() {
        for n in 0..4 {
            let all: Vec<usize> = (0..=n).collect();
            assert_eq!(Form::whitney(n, &all).integrate(), int(1), "n = {n}");
        }
        // on Δ¹: ω₀ = t₀, ω₁ = t₁, ω₀₁ = t₀dt₁ − t₁dt₀ = dt₁
        assert_eq!(Form::whitney(1, &[0, 1]), Form::dt(1, 1));
    }

    #[test]
    fn barycentric_relations() {
        for n in 0..4 {
            let mut s = Form::zero(n);
            let mut ds = Form::zero(n);
            for i in 0..=n {
                s = s.add(&Form::t(n, i));
                ds = ds.add(&Form::dt(n, i));
            }
            assert_eq!(s, Form::constant(n, int(1)));
            assert!(ds.is_zero());
        }
    }

    proptest! {
        #[test]
        fn d_squares_to_zero(c in prop::collection::vec(-3i64..4, 20)) {
            let f = random_form(3, 4, &c);
            prop_assert!(f.d().d().is_zero());
        }

        #[test]
        fn leibniz(c in prop::collection::vec(-3i64..4, 12), e in prop::collection::vec(-3i64..4, 12), p in 0usize..3) {
            let a = random_form(2, 2, &c).part(p);
            let b = random_form(2, 2, &e);
            let sign = if p % 2 == 0 { int(1) } else { int(-1) };
            prop_assert_eq!(a.mul(&b).d(), a.d().mul(&b).add(&a.mul(&b.d()).scale(&sign)));
        }

        #[test]
        fn pullback_is_a_dg_algebra_map(c in prop::collection::vec(-3i64..4, 12), e in prop::collection::vec(-3i64..4, 12), k in 0usize..3) {
            let a = random_form(2, 2, &c);
            let b = random_form(2, 2, &e);
            prop_assert_eq!(a.mul(&b).face_pullback(k), a.face_pullback(k).mul(&b.face_pullback(k)));
            prop_assert_eq!(a.d().face_pullback(k), a.face_pullback(k).d());
        }

        #[test]
        fn stokes(c in prop::collection::vec(-3i64..4, 30), n in 1usize..4) {
            let eta = random_form(n, 4, &c).part(n - 1);
            let mut boundary = Scalar::zero();
            for k in 0..=n {
                let s = if k % 2 == 0 { int(1) } else { int(-1) };
                boundary += s * eta.face_pullback(k).integrate();
            }
            prop_assert_eq!(eta.d().integrate(), boundary);
        }
    }
}
