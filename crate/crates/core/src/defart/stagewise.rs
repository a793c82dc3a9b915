use num_traits::{One, Zero};

use super::ArtinAlgebra;
use crate::dgla::{gauge_act, Dgla, TensorElement};
use crate::homalg::{kernel_basis, solve, vec_is_zero, Matrix, Scalar, SolveOutcome};
use crate::{Error, Result};

/// Coefficients in `V ⊗ m_A`, one column of `V`-coordinates per basis element of `m_A`.
pub type Columns = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StageOutcome {
    Solved(Columns),
    /// No solution for the given basis element of `m_A` at this level.
    Failed { level: usize, column: usize },
}

fn zero_columns(a: &ArtinAlgebra, dim: usize) -> Columns {
    vec![vec![Scalar::zero(); dim]; a.dim()]
}

/// Solves `F(u) = 0` for `u ∈ V ⊗ m_A`, one level of the `m_A`-adic filtration at a
/// time.
///
/// `F` must be polynomial with the property that, once lower levels are fixed, the
/// level-`k` columns of `F(u)` are affine in the level-`k` columns of `u` with a linear
/// part `J` that is the same for every column. `J` is found by probing and each stage
/// keeps the solution of minimal support. When a stage is inconsistent, the previous
/// stage is re-opened along `ker J` and the two are solved jointly to first order; the
/// combined step is accepted only if it verifies exactly.
pub fn solve_stagewise(
    a: &ArtinAlgebra,
    unknown_dim: usize,
    f: impl Fn(&Columns) -> Result<Columns>,
) -> Result<StageOutcome> {
    let mut u = zero_columns(a, unknown_dim);
    let top = a.levels().iter().copied().max().unwrap_or(0);
    // (columns of the previous level, basis of ker J there)
    let mut previous: Option<(Vec<usize>, Vec<Vec<Scalar>>)> = None;
    for level in 1..=top {
        let cols: Vec<usize> = (0..a.dim()).filter(|&j| a.levels()[j] == level).collect();
        let base = f(&u)?;
        let j0 = cols[0];
        let rdim = base[j0].len();
        let mut jac = Matrix::zeros(rdim, unknown_dim);
        for e in 0..unknown_dim {
            let mut probe = u.clone();
            probe[j0][e] += Scalar::one();
            let v = f(&probe)?;
            for r in 0..rdim {
                jac[(r, e)] = &v[j0][r] - &base[j0][r];
            }
        }
        let kernel = kernel_basis(&jac);
        let mut plain = u.clone();
        let mut failed = None;
        for &j in &cols {
            if vec_is_zero(&base[j]) {
                continue;
            }
            let rhs: Vec<Scalar> = base[j].iter().map(|x| -x).collect();
            match solve(&jac, &rhs)? {
                SolveOutcome::Solved(x) => plain[j] = x,
                SolveOutcome::Inconsistent => {
                    failed = Some(j);
                    break;
                }
            }
        }
        match failed {
            None => u = plain,
            Some(j) => match &previous {
                Some((pcols, pker)) if !pker.is_empty() => {
                    match joint_step(&f, &u, &cols, &jac, pcols, pker, &base)? {
                        Some(next) => u = next,
                        None => return Ok(StageOutcome::Failed { level, column: j }),
                    }
                }
                _ => return Ok(StageOutcome::Failed { level, column: j }),
            },
        }
        let check = f(&u)?;
        if (0..a.dim()).any(|j| a.levels()[j] <= level && !vec_is_zero(&check[j])) {
            return Ok(StageOutcome::Failed { level, column: j0 });
        }
        previous = Some((cols, kernel));
    }
    if f(&u)?.iter().any(|c| !vec_is_zero(c)) {
        return Err(Error::Invariant("stagewise solution does not satisfy the system".into()));
    }
    Ok(StageOutcome::Solved(u))
}

/// Joint first-order solve for the current level and a kernel correction of the
/// previous one.
fn joint_step(
    f: &impl Fn(&Columns) -> Result<Columns>,
    u: &Columns,
    cols: &[usize],
    jac: &Matrix,
    pcols: &[usize],
    pker: &[Vec<Scalar>],
    base: &Columns,
) -> Result<Option<Columns>> {
    let nv = jac.cols();
    let rdim = jac.rows();
    let rows = cols.len() * rdim;
    let mut unknowns: Vec<Vec<Scalar>> = Vec::new();
    // current-level unknowns: J acting on each column separately
    for (ci, _) in cols.iter().enumerate() {
        for e in 0..nv {
            let mut col = vec![Scalar::zero(); rows];
            for r in 0..rdim {
                col[ci * rdim + r] = jac[(r, e)].clone();
            }
            unknowns.push(col);
        }
    }
    let mut directions = Vec::new();
    for &p in pcols {
        for k in pker {
            let mut probe = u.clone();
            for (x, y) in probe[p].iter_mut().zip(k) {
                *x += y;
            }
            let v = f(&probe)?;
            let mut col = vec![Scalar::zero(); rows];
            for (ci, &c) in cols.iter().enumerate() {
                for r in 0..rdim {
                    col[ci * rdim + r] = &v[c][r] - &base[c][r];
                }
            }
            unknowns.push(col);
            directions.push((p, k.clone()));
        }
    }
    let m = Matrix::from_columns(&unknowns, rows);
    let rhs: Vec<Scalar> = cols.iter().flat_map(|&c| base[c].iter().map(|x| -x)).collect();
    let x = match solve(&m, &rhs)? {
        SolveOutcome::Solved(x) => x,
        SolveOutcome::Inconsistent => return Ok(None),
    };
    let mut next = u.clone();
    for (ci, &c) in cols.iter().enumerate() {
        next[c] = x[ci * nv..(ci + 1) * nv].to_vec();
    }
    for (coef, (p, k)) in x[cols.len() * nv..].iter().zip(directions) {
        if coef.is_zero() {
            continue;
        }
        for (a, b) in next[p].iter_mut().zip(k) {
            *a += coef * b;
        }
    }
    Ok(Some(next))
}

/// Solves `F(u) = 0` for `F` affine in `u ∈ V ⊗ m_A`, globally.
pub fn solve_affine(
    a: &ArtinAlgebra,
    unknown_dim: usize,
    f: impl Fn(&Columns) -> Result<Columns>,
) -> Result<Option<Columns>> {
    let zero = zero_columns(a, unknown_dim);
    let base: Vec<Scalar> = f(&zero)?.concat();
    if vec_is_zero(&base) {
        return Ok(Some(zero));
    }
    let n = unknown_dim * a.dim();
    let mut cols = Vec::with_capacity(n);
    for j in 0..a.dim() {
        for e in 0..unknown_dim {
            let mut probe = zero.clone();
            probe[j][e] = Scalar::one();
            let v: Vec<Scalar> = f(&probe)?.concat();
            cols.push(v.iter().zip(&base).map(|(x, y)| x - y).collect::<Vec<_>>());
        }
    }
    let m = Matrix::from_columns(&cols, base.len());
    let rhs: Vec<Scalar> = base.iter().map(|x| -x).collect();
    match solve(&m, &rhs)? {
        SolveOutcome::Inconsistent => Ok(None),
        SolveOutcome::Solved(x) => {
            let u: Columns = x.chunks(unknown_dim.max(1)).map(|c| c.to_vec()).take(a.dim()).collect();
            let u = if unknown_dim == 0 { zero } else { u };
            if f(&u)?.iter().any(|c| !vec_is_zero(c)) {
                return Err(Error::Invariant("system is not affine in the unknown".into()));
            }
            Ok(Some(u))
        }
    }
}

/// Embeds degree-local columns of `L^deg ⊗ m_A` into a tensor element.
pub fn embed_columns(l: &Dgla, deg: i32, cols: &Columns) -> TensorElement {
    TensorElement { columns: cols.iter().map(|c| l.embed(deg, c)).collect() }
}

/// Degree-local columns of a tensor element.
pub fn local_columns(l: &Dgla, deg: i32, x: &TensorElement) -> Columns {
    x.columns.iter().map(|c| l.space().component(c, deg).to_vec()).collect()
}

/// Searches for `a ∈ L⁰ ⊗ m_A` with `e^a ∗ x₀ = x₁`.
///
/// Sound always. The search fixes one gauge parameter per level, so it is complete
/// whenever the kernel of `d` on `L⁰` acts trivially (for instance `H⁰` central).
pub fn gauge_equivalence(
    l: &Dgla,
    a: &ArtinAlgebra,
    x0: &TensorElement,
    x1: &TensorElement,
) -> Result<Option<TensorElement>> {
    let n0 = l.space().dim(0);
    let out = solve_stagewise(a, n0, |cols| {
        let g = embed_columns(l, 0, cols);
        let y = gauge_act(l, a, &g, x0)?;
        Ok(local_columns(l, 1, &y.sub(x1)))
    })?;
    Ok(match out {
        StageOutcome::Solved(cols) => Some(embed_columns(l, 0, &cols)),
        StageOutcome::Failed { .. } => None,
    })
}
