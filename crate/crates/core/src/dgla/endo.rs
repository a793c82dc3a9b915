use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::Dgla;
use crate::homalg::{CochainComplex, GradedSpace, Matrix, Scalar};

impl Dgla {
    /// Graded endomorphisms of a complex `V`: `Endᵖ = ⊕ Hom(Vⁱ, V^{i+p})` with
    /// `D(φ) = dφ − (−1)ᵖ φd` and the graded commutator.
    ///
    /// The basis element `"w<-v"` sends `v` to `w`.
    pub fn endomorphisms(v: &CochainComplex) -> Dgla {
        let s = v.space();
        let n = s.total_dim();
        let mut labels: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        let mut pairs: BTreeMap<i32, Vec<(usize, usize)>> = BTreeMap::new();
        for src in 0..n {
            for tgt in 0..n {
                let p = s.degree_of(tgt) - s.degree_of(src);
                pairs.entry(p).or_default().push((tgt, src));
            }
        }
        for (p, ps) in pairs.iter_mut() {
            ps.sort();
            labels.insert(*p, ps.iter().map(|&(t, f)| format!("{}<-{}", s.label(t), s.label(f))).collect());
        }
        let space = GradedSpace::new(labels).expect("endomorphism labels are distinct");
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        for (p, ps) in &pairs {
            for (k, pair) in ps.iter().enumerate() {
                index.insert(*pair, space.offset(*p) + k);
            }
        }
        let dv = v.differential().to_global();
        let deg = |e: usize| space.degree_of(e);
        // D(E_{ts}) = Σ_u d_{ut} E_{us} − (−1)ᵖ Σ_u d_{su} E_{tu}
        let mut blocks: BTreeMap<i32, Matrix> = BTreeMap::new();
        for (&p, ps) in &pairs {
            if space.dim(p + 1) == 0 {
                continue;
            }
            let mut m = Matrix::zeros(space.dim(p + 1), ps.len());
            let o = space.offset(p + 1);
            for (col, &(t, f)) in ps.iter().enumerate() {
                for u in 0..n {
                    if !dv[(u, t)].is_zero() {
                        m[(index[&(u, f)] - o, col)] += dv[(u, t)].clone();
                    }
                    if !dv[(f, u)].is_zero() {
                        let c = if p % 2 == 0 { -dv[(f, u)].clone() } else { dv[(f, u)].clone() };
                        m[(index[&(t, u)] - o, col)] += c;
                    }
                }
            }
            blocks.insert(p, m);
        }
        let complex = CochainComplex::from_blocks(space.clone(), blocks).expect("D² = 0 on endomorphisms");
        // [E_{ab}, E_{cd}] = δ_{bc} E_{ad} − (−1)^{pq} δ_{da} E_{cb}
        let mut table: HashMap<(usize, usize), Vec<(usize, Scalar)>> = HashMap::new();
        for (&(a, b), &x) in &index {
            for (&(c, d), &y) in &index {
                let mut val: BTreeMap<usize, Scalar> = BTreeMap::new();
                if b == c {
                    *val.entry(index[&(a, d)]).or_insert_with(Scalar::zero) += Scalar::one();
                }
                if d == a {
                    let s = if (deg(x) * deg(y)) % 2 == 0 { -Scalar::one() } else { Scalar::one() };
                    *val.entry(index[&(c, b)]).or_insert_with(Scalar::zero) += s;
                }
                let v: Vec<(usize, Scalar)> = val.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                if !v.is_empty() {
                    table.insert((x, y), v);
                }
            }
        }
        Dgla::new_unchecked(complex, table)
    }
}
