use std::collections::{BTreeMap, HashMap};

use super::Dgla;
use crate::homalg::{CochainComplex, GradedSpace, LinearMap, Matrix};
use crate::Result;

impl Dgla {
    /// The zero DGLA.
    pub fn zero() -> Self {
        Dgla::abelian(CochainComplex::zero_differential(GradedSpace::zero()))
    }

    /// `∏ L_f` with basis labels `"{label}@{name_f}"`.
    pub fn product(factors: &[(String, Dgla)]) -> Result<Self> {
        let mut labels: BTreeMap<i32, Vec<String>> = BTreeMap::new();
        // (factor, degree) -> local offset inside the product's degree block
        let mut offsets: HashMap<(usize, i32), usize> = HashMap::new();
        for (f, (name, l)) in factors.iter().enumerate() {
            for p in l.space().degrees().collect::<Vec<_>>() {
                let ls = labels.entry(p).or_default();
                offsets.insert((f, p), ls.len());
                ls.extend(l.space().labels(p).iter().map(|s| format!("{s}@{name}")));
            }
        }
        let space = GradedSpace::new(labels)?;
        let index = |f: usize, l: &Dgla, i: usize| {
            let p = l.space().degree_of(i);
            space.offset(p) + offsets[&(f, p)] + (i - l.space().offset(p))
        };
        let mut blocks: BTreeMap<i32, Matrix> = BTreeMap::new();
        let mut table = HashMap::new();
        for (f, (_, l)) in factors.iter().enumerate() {
            for (&p, d) in l.complex().differential().blocks() {
                let b = blocks.entry(p).or_insert_with(|| Matrix::zeros(space.dim(p + 1), space.dim(p)));
                let (r0, c0) = (offsets[&(f, p + 1)], offsets[&(f, p)]);
                for r in 0..d.rows() {
                    for c in 0..d.cols() {
                        b[(r0 + r, c0 + c)] = d[(r, c)].clone();
                    }
                }
            }
            let n = l.dim();
            for i in 0..n {
                for j in 0..n {
                    let v = l.bracket_basis(i, j);
                    if !v.is_empty() {
                        let w = v.iter().map(|(k, c)| (index(f, l, *k), c.clone())).collect();
                        table.insert((index(f, l, i), index(f, l, j)), w);
                    }
                }
            }
        }
        let complex = CochainComplex::from_blocks(space, blocks)?;
        Ok(Dgla::new_unchecked(complex, table))
    }

    /// Block map `∏ L_f → ∏ M_g` whose `(g, f)` block is given by `parts`; other blocks
    /// are zero. `parts` lists `(source factor, target factor, map)`.
    pub fn product_map(
        source: &Dgla,
        source_factors: &[(String, Dgla)],
        target: &Dgla,
        target_factors: &[(String, Dgla)],
        parts: &[(usize, usize, LinearMap)],
    ) -> Result<LinearMap> {
        let src_index = |f: usize, i: usize| -> usize {
            let (name, l) = &source_factors[f];
            source.space().index_of(&format!("{}@{name}", l.space().label(i))).expect("product label")
        };
        let tgt_index = |g: usize, i: usize| -> usize {
            let (name, l) = &target_factors[g];
            target.space().index_of(&format!("{}@{name}", l.space().label(i))).expect("product label")
        };
        let mut blocks: BTreeMap<i32, Matrix> = BTreeMap::new();
        for (f, g, m) in parts {
            let sl = &source_factors[*f].1;
            let tl = &target_factors[*g].1;
            for (&p, b) in m.blocks() {
                let blk = blocks
                    .entry(p)
                    .or_insert_with(|| Matrix::zeros(target.space().dim(p), source.space().dim(p)));
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        let gi = tgt_index(*g, tl.space().offset(p) + r) - target.space().offset(p);
                        let gj = src_index(*f, sl.space().offset(p) + c) - source.space().offset(p);
                        blk[(gi, gj)] += &b[(r, c)];
                    }
                }
            }
        }
        LinearMap::new(source.space().clone(), target.space().clone(), 0, blocks)
    }
}
