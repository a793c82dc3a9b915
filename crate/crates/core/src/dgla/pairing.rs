use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{Dgla, Violation};
use crate::homalg::{Matrix, Scalar};
use crate::{Error, Result};

/// Bilinear pairing on a DGLA, stored as a Gram matrix on global coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicPairing {
    pub dgla: Dgla,
    pub gram: Matrix,
}

/// Outcome per axiom: `degree`, `symmetry`, `d_compatibility`, `invariance`,
/// `nondegeneracy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub axioms: BTreeMap<String, bool>,
    pub violations: Vec<Violation>,
}

impl PairingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub const PAIRING_AXIOMS: [&str; 5] = ["degree", "symmetry", "d_compatibility", "invariance", "nondegeneracy"];

impl CyclicPairing {
    /// Builds the Gram matrix from `(x, y, value)` entries; the mirrored entry is filled
    /// in. Unknown labels are errors; conflicting mirrored entries are reported by
    /// [`CyclicPairing::check`].
    pub fn from_entries(dgla: &Dgla, entries: &[(String, String, Scalar)]) -> Result<(Self, Vec<Violation>)> {
        let s = dgla.space();
        let n = s.total_dim();
        let mut gram = Matrix::zeros(n, n);
        let mut given: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        let mut conflicts = Vec::new();
        let idx = |l: &str| s.index_of(l).ok_or_else(|| Error::input(format!("unknown basis label {l:?}")));
        for (x, y, v) in entries {
            let (i, j) = (idx(x)?, idx(y)?);
            for key in [(i, j), (j, i)] {
                if let Some(prev) = given.get(&key) {
                    if prev != v {
                        conflicts.push(Violation {
                            identity: "symmetry".into(),
                            witness: vec![x.clone(), y.clone()],
                            defect: vec![(format!("({x},{y})"), v - prev)],
                        });
                    }
                }
            }
            given.insert((i, j), v.clone());
            given.insert((j, i), v.clone());
        }
        for ((i, j), v) in given {
            gram[(i, j)] = v;
        }
        Ok((CyclicPairing { dgla: dgla.clone(), gram }, conflicts))
    }

    pub fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.gram.apply(y);
        x.iter().zip(gy).map(|(a, b)| a * b).sum()
    }

    pub fn check(&self) -> PairingReport {
        self.check_with(Vec::new())
    }

    fn check_with(&self, mut violations: Vec<Violation>) -> PairingReport {
        let l = &self.dgla;
        let s = l.space();
        let n = s.total_dim();
        let e = |i: usize| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::one();
            v
        };
        let lab = |i: usize| s.label(i).to_string();
        for i in 0..n {
            for j in 0..n {
                let v = &self.gram[(i, j)];
                if !v.is_zero() && s.degree_of(i) + s.degree_of(j) != 2 {
                    violations.push(Violation {
                        identity: "degree".into(),
                        witness: vec![lab(i), lab(j)],
                        defect: vec![(format!("({},{})", lab(i), lab(j)), v.clone())],
                    });
                }
                if i < j && self.gram[(i, j)] != self.gram[(j, i)] {
                    violations.push(Violation {
                        identity: "symmetry".into(),
                        witness: vec![lab(i), lab(j)],
                        defect: vec![],
                    });
                }
            }
        }
        // (dx, y) = (−1)^{p+1} (x, dy)
        for i in 0..n {
            let p = s.degree_of(i);
            let dx = l.d(&e(i));
            for j in 0..n {
                let lhs = self.pair(&dx, &e(j));
                let r = self.pair(&e(i), &l.d(&e(j)));
                let rhs = if p % 2 == 0 { -r } else { r };
                if lhs != rhs {
                    violations.push(Violation {
                        identity: "d_compatibility".into(),
                        witness: vec![lab(i), lab(j)],
                        defect: vec![("lhs-rhs".into(), lhs - rhs)],
                    });
                }
            }
        }
        // ([x,y],z) = (x,[y,z])
        if !l.is_abelian() {
            for i in 0..n {
                for j in 0..n {
                    let xy = l.bracket(&e(i), &e(j));
                    for k in 0..n {
                        let lhs = self.pair(&xy, &e(k));
                        let rhs = self.pair(&e(i), &l.bracket(&e(j), &e(k)));
                        if lhs != rhs {
                            violations.push(Violation {
                                identity: "invariance".into(),
                                witness: vec![lab(i), lab(j), lab(k)],
                                defect: vec![("lhs-rhs".into(), lhs - rhs)],
                            });
                        }
                    }
                }
            }
        }
        let degrees: Vec<i32> = s.degrees().collect();
        for &p in &degrees {
            if p > 2 - p {
                continue;
            }
            let hp = l.cohomology(p);
            let hq = l.cohomology(2 - p);
            if hp.dimension == 0 && hq.dimension == 0 {
                continue;
            }
            let rank = if hp.dimension == 0 || hq.dimension == 0 {
                0
            } else {
                let rows: Vec<Vec<Scalar>> = hp
                    .representatives
                    .iter()
                    .map(|a| {
                        hq.representatives
                            .iter()
                            .map(|b| self.pair(&l.embed(p, a), &l.embed(2 - p, b)))
                            .collect()
                    })
                    .collect();
                Matrix::from_rows(rows, hq.dimension).expect("square rows").rank()
            };
            if hp.dimension != hq.dimension || rank != hp.dimension {
                violations.push(Violation {
                    identity: "nondegeneracy".into(),
                    witness: vec![format!("H{p}"), format!("H{}", 2 - p)],
                    defect: vec![
                        (format!("dim H{p}"), Scalar::from_integer((hp.dimension as i64).into())),
                        (format!("dim H{}", 2 - p), Scalar::from_integer((hq.dimension as i64).into())),
                        ("rank".into(), Scalar::from_integer((rank as i64).into())),
                    ],
                });
            }
        }
        let axioms = PAIRING_AXIOMS
            .iter()
            .map(|a| (a.to_string(), !violations.iter().any(|v| v.identity == *a)))
            .collect();
        PairingReport { axioms, violations }
    }
}

/// Builds the pairing from labelled entries and checks every axiom.
pub fn check_cyclic_pairing(dgla: &Dgla, entries: &[(String, String, Scalar)]) -> Result<PairingReport> {
    let (p, conflicts) = CyclicPairing::from_entries(dgla, entries)?;
    Ok(p.check_with(conflicts))
}
