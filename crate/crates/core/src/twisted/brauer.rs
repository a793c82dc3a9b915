use std::collections::BTreeMap;

use num_traits::One;

use super::nerve::{CheckReport, Face, RingedNerve};
use crate::homalg::Scalar;
use crate::{Error, Result};

/// Unit-valued Čech 2-cochain `α_{ijk} ∈ A_{ijk}^×` on increasing triples. Triples not
/// listed carry `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerCocycle {
    values: BTreeMap<Face, Vec<Scalar>>,
}

/// Outcome of the exhaustive search for `β_{ij} ∈ {±1}` with `δβ = α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignSearch {
    /// Some triple algebra is not `ℚ` or some value is not `±1`.
    NotApplicable(String),
    /// `β` on increasing edges.
    Coboundary(BTreeMap<Face, i8>),
    NotCoboundary { assignments: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerReport {
    pub check: CheckReport,
    /// 4-faces on which the cocycle identity fails.
    pub witnesses: Vec<Face>,
    pub search: SignSearch,
}

/// Largest edge count for which the sign search runs.
pub const MAX_SEARCH_EDGES: usize = 24;

impl BrauerCocycle {
    /// Errors on triples that are not faces, wrong lengths and non-units.
    pub fn new(nerve: &RingedNerve, values: BTreeMap<Face, Vec<Scalar>>) -> Result<Self> {
        for (t, v) in &values {
            if t.len() != 3 || t.windows(2).any(|w| w[0] >= w[1]) || !nerve.is_face(t) {
                return Err(Error::input(format!("α given on {t:?}, which is not an increasing triple face")));
            }
            let a = nerve.algebra(t);
            if v.len() != a.dim() {
                return Err(Error::shape(format!("α at {} has the wrong length", nerve.show(t))));
            }
            if a.inverse(v).is_none() {
                return Err(Error::input(format!("α at {} is not a unit", nerve.show(t))));
            }
        }
        Ok(BrauerCocycle { values })
    }

    pub fn trivial() -> Self {
        BrauerCocycle { values: BTreeMap::new() }
    }

    /// `−1` on the listed triples and `1` elsewhere (constant coefficients).
    pub fn signs(nerve: &RingedNerve, negative: &[Face]) -> Result<Self> {
        let values = negative.iter().map(|t| (t.clone(), vec![-Scalar::one()])).collect();
        BrauerCocycle::new(nerve, values)
    }

    /// Stored values on increasing triples (entries equal to `1` may be omitted).
    pub fn values(&self) -> &BTreeMap<Face, Vec<Scalar>> {
        &self.values
    }

    /// `α` on an increasing triple, in `A_{ijk}`.
    pub fn at(&self, nerve: &RingedNerve, t: &[usize]) -> Vec<Scalar> {
        self.values.get(t).cloned().unwrap_or_else(|| nerve.algebra(t).one())
    }

    /// `α` on distinct vertices in any order: the value on the sorted triple, inverted for
    /// odd permutations.
    pub fn ordered(&self, nerve: &RingedNerve, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let mut t = [i, j, k];
        let mut odd = false;
        for a in 0..3 {
            for b in 0..2 - a {
                if t[b] > t[b + 1] {
                    t.swap(b, b + 1);
                    odd = !odd;
                }
            }
        }
        let v = self.at(nerve, &t);
        if odd {
            nerve.algebra(&t).inverse(&v).expect("α is a unit")
        } else {
            v
        }
    }

    /// Whether every value is `±1` and every triple algebra is `ℚ`.
    fn sign_bits(&self, nerve: &RingedNerve) -> std::result::Result<BTreeMap<Face, bool>, String> {
        let mut bits = BTreeMap::new();
        for t in nerve.faces_of_size(3) {
            if nerve.algebra(t).dim() != 1 {
                return Err(format!("A on {} is not ℚ", nerve.show(t)));
            }
            let v = &self.at(nerve, t)[0];
            if v.is_one() {
                bits.insert(t.clone(), false);
            } else if *v == -Scalar::one() {
                bits.insert(t.clone(), true);
            } else {
                return Err(format!("α at {} is not ±1", nerve.show(t)));
            }
        }
        Ok(bits)
    }
}

/// Checks `α_{jkl} α_{ikl}⁻¹ α_{ijl} α_{ijk}⁻¹ = 1` on every 4-face and runs the sign search.
pub fn validate_brauer(nerve: &RingedNerve, alpha: &BrauerCocycle) -> BrauerReport {
    let mut check = CheckReport::default();
    let mut witnesses = Vec::new();
    for f in nerve.faces_of_size(4) {
        let a = nerve.algebra(f);
        let (i, j, k, l) = (f[0], f[1], f[2], f[3]);
        let part = |t: [usize; 3], invert: bool| {
            let v = nerve.restrict(&t, f, &alpha.at(nerve, &t));
            if invert {
                a.inverse(&v).expect("α is a unit")
            } else {
                v
            }
        };
        let mut p = part([j, k, l], false);
        p = a.mul(&p, &part([i, k, l], true));
        p = a.mul(&p, &part([i, j, l], false));
        p = a.mul(&p, &part([i, j, k], true));
        if p != a.one() {
            check.push(format!("cocycle identity fails on {}", nerve.show(f)));
            witnesses.push(f.clone());
        }
    }
    BrauerReport { check, witnesses, search: sign_search(nerve, alpha) }
}

/// Exhaustive search over all `β: edges → {±1}` for `β_{jk} β_{ik}⁻¹ β_{ij} = α_{ijk}`.
pub fn sign_search(nerve: &RingedNerve, alpha: &BrauerCocycle) -> SignSearch {
    let bits = match alpha.sign_bits(nerve) {
        Ok(b) => b,
        Err(why) => return SignSearch::NotApplicable(why),
    };
    let edges: Vec<Face> = nerve.faces_of_size(2).cloned().collect();
    if edges.len() > MAX_SEARCH_EDGES {
        return SignSearch::NotApplicable(format!("{} edges exceed the search limit", edges.len()));
    }
    let index = |a: usize, b: usize| edges.iter().position(|e| *e == [a, b]).expect("edge of a face");
    let triples: Vec<(usize, usize, usize, bool)> = bits
        .iter()
        .map(|(t, &neg)| (index(t[0], t[1]), index(t[1], t[2]), index(t[0], t[2]), neg))
        .collect();
    let total = 1u64 << edges.len();
    for mask in 0..total {
        let bit = |e: usize| mask >> e & 1 == 1;
        if triples.iter().all(|&(ij, jk, ik, neg)| bit(ij) ^ bit(jk) ^ bit(ik) == neg) {
            let beta = edges
                .iter()
                .enumerate()
                .map(|(e, f)| (f.clone(), if bit(e) { -1 } else { 1 }))
                .collect();
            return SignSearch::Coboundary(beta);
        }
    }
    SignSearch::NotCoboundary { assignments: total }
}

impl SignSearch {
    pub fn is_coboundary(&self) -> Option<bool> {
        match self {
            SignSearch::NotApplicable(_) => None,
            SignSearch::Coboundary(_) => Some(true),
            SignSearch::NotCoboundary { .. } => Some(false),
        }
    }
}
