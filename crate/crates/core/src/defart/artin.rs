use num_traits::{One, Zero};

use crate::homalg::{extend_basis, CommAlgebra, Matrix, Scalar};
use crate::{Error, Result, MAX_NIL_INDEX};

/// Local Artinian ℚ-algebra `A = ℚ ⊕ m_A`, presented by a basis of `m_A`.
///
/// The basis is adapted to the powers of `m_A`: every `m_A^k` is spanned by the basis
/// elements of level at least `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinAlgebra {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<Vec<Scalar>>>,
    nil_index: usize,
    levels: Vec<usize>,
}

impl ArtinAlgebra {
    /// Parses `k[t]/(t^n)` or `k[x,y]/(x,y)^n` (any variable names, `2 ≤ n ≤ 8`).
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::input(format!("unrecognized algebra {text:?}"));
        let rest = s.strip_prefix("k[").ok_or_else(bad)?;
        let (vars, rest) = rest.split_once(']').ok_or_else(bad)?;
        let rest = rest.strip_prefix("/(").ok_or_else(bad)?;
        let vars: Vec<&str> = vars.split(',').collect();
        if vars.iter().any(|v| v.is_empty() || !v.chars().all(char::is_alphanumeric))
            || (vars.len() == 2 && vars[0] == vars[1])
        {
            return Err(bad());
        }
        let n: usize = match vars.len() {
            1 => {
                let (v, e) = rest.strip_suffix(')').ok_or_else(bad)?.split_once('^').ok_or_else(bad)?;
                if v != vars[0] {
                    return Err(bad());
                }
                e.parse().map_err(|_| bad())?
            }
            2 => {
                let (gens, e) = rest.split_once(")^").ok_or_else(bad)?;
                if gens != format!("{},{}", vars[0], vars[1]) {
                    return Err(bad());
                }
                e.parse().map_err(|_| bad())?
            }
            _ => return Err(bad()),
        };
        if !(2..=MAX_NIL_INDEX).contains(&n) {
            return Err(Error::input(format!("exponent {n} outside 2..={MAX_NIL_INDEX}")));
        }
        Ok(if vars.len() == 1 {
            ArtinAlgebra::truncated(vars[0], n)
        } else {
            ArtinAlgebra::two_variables(vars[0], vars[1], n)
        })
    }

    /// `ℚ[t]/(tⁿ)`.
    pub fn truncated(var: &str, n: usize) -> Self {
        let monomials: Vec<Vec<usize>> = (1..n).map(|i| vec![i]).collect();
        Self::monomial(format!("k[{var}]/({var}^{n})"), &[var], monomials, n)
    }

    /// `ℚ[x,y]/(x,y)ⁿ`.
    pub fn two_variables(x: &str, y: &str, n: usize) -> Self {
        let monomials: Vec<Vec<usize>> =
            (1..n).flat_map(|d| (0..=d).rev().map(move |a| vec![a, d - a])).collect();
        Self::monomial(format!("k[{x},{y}]/({x},{y})^{n}"), &[x, y], monomials, n)
    }

    fn monomial(name: String, vars: &[&str], monomials: Vec<Vec<usize>>, n: usize) -> Self {
        let label = |m: &[usize]| {
            let parts: Vec<String> = m
                .iter()
                .zip(vars)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, v)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            parts.join("*")
        };
        let labels = monomials.iter().map(|m| label(m)).collect();
        let k = monomials.len();
        let table = monomials
            .iter()
            .map(|a| {
                monomials
                    .iter()
                    .map(|b| {
                        let prod: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        let mut v = vec![Scalar::zero(); k];
                        if let Some(p) = monomials.iter().position(|m| *m == prod) {
                            v[p] = Scalar::one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let levels = monomials.iter().map(|m| m.iter().sum()).collect();
        ArtinAlgebra { name, labels, table, nil_index: n, levels }
    }

    /// Explicit presentation. Checks shapes, commutativity, associativity, nilpotency and
    /// that the basis is adapted to the powers of the maximal ideal.
    pub fn from_table(name: &str, labels: Vec<String>, table: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let k = labels.len();
        if k == 0 {
            return Err(Error::input("maximal ideal must be nonzero"));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::input(format!("duplicate label {l:?}")));
            }
        }
        if table.len() != k || table.iter().any(|r| r.len() != k || r.iter().any(|v| v.len() != k)) {
            return Err(Error::shape(format!("multiplication table must be {k}x{k}x{k}")));
        }
        let mut a = ArtinAlgebra { name: name.to_string(), labels, table, nil_index: 0, levels: vec![] };
        for i in 0..k {
            for j in 0..k {
                if a.table[i][j] != a.table[j][i] {
                    return Err(Error::input(format!(
                        "multiplication is not commutative on ({}, {})",
                        a.labels[i], a.labels[j]
                    )));
                }
                for l in 0..k {
                    let left = a.mul(&a.table[i][j], &a.basis(l));
                    let right = a.mul(&a.basis(i), &a.table[j][l]);
                    if left != right {
                        return Err(Error::input(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            a.labels[i], a.labels[j], a.labels[l]
                        )));
                    }
                }
            }
        }
        // powers[p] spans m^{p+1}
        let mut powers: Vec<Vec<Vec<Scalar>>> = vec![(0..k).map(|i| a.basis(i)).collect()];
        loop {
            let last = powers.last().unwrap();
            if last.is_empty() {
                break;
            }
            if powers.len() > k + 1 {
                return Err(Error::input("multiplication table is not nilpotent"));
            }
            let mut products = Vec::new();
            for v in last {
                for i in 0..k {
                    products.push(a.mul(v, &a.basis(i)));
                }
            }
            let idx = extend_basis(&[], &products, k);
            let next: Vec<Vec<Scalar>> = idx.into_iter().map(|i| products[i].clone()).collect();
            if next.len() == last.len() {
                return Err(Error::input("multiplication table is not nilpotent"));
            }
            powers.push(next);
        }
        a.nil_index = powers.len();
        if a.nil_index > MAX_NIL_INDEX {
            return Err(Error::unsupported(format!(
                "nilpotency index {} exceeds {MAX_NIL_INDEX}",
                a.nil_index
            )));
        }
        let mut levels = vec![1; k];
        for (p, span) in powers.iter().enumerate().skip(1) {
            let level = p + 1;
            let rank = if span.is_empty() { 0 } else { Matrix::from_columns(span, k).rank() };
            let members: Vec<usize> = (0..k)
                .filter(|&i| {
                    let mut cols = span.clone();
                    cols.push(a.basis(i));
                    rank > 0 && Matrix::from_columns(&cols, k).rank() == rank
                })
                .collect();
            if members.len() != rank {
                return Err(Error::input(format!(
                    "basis is not adapted to the powers of the maximal ideal (power {level})"
                )));
            }
            for i in members {
                levels[i] = level;
            }
        }
        a.levels = levels;
        Ok(a)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Smallest `k` with `m_A^k = 0`.
    pub fn nil_index(&self) -> usize {
        self.nil_index
    }

    /// Level of each basis element: the largest `k` with the element in `m_A^k`.
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    /// `b_i·b_j` in the basis of `m_A`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let k = self.dim();
        let mut out = vec![Scalar::zero(); k];
        for i in 0..k {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..k {
                if b[j].is_zero() {
                    continue;
                }
                let c = &a[i] * &b[j];
                for (l, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[l] += &c * t;
                    }
                }
            }
        }
        out
    }

    /// `A` as a unital algebra with basis `1, b_1, …`.
    pub fn unitalization(&self) -> CommAlgebra {
        let k = self.dim();
        let n = k + 1;
        let mut labels = vec!["1".to_string()];
        labels.extend(self.labels.iter().cloned());
        let mut table = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let v = &mut table[i][j];
                match (i, j) {
                    (0, 0) => v[0] = Scalar::one(),
                    (0, j) => v[j] = Scalar::one(),
                    (i, 0) => v[i] = Scalar::one(),
                    (i, j) => {
                        for (l, t) in self.table[i - 1][j - 1].iter().enumerate() {
                            v[l + 1] = t.clone();
                        }
                    }
                }
            }
        }
        let mut unit = vec![Scalar::zero(); n];
        unit[0] = Scalar::one();
        CommAlgebra::new(labels, table, unit).expect("unitalization of a valid algebra")
    }
}
