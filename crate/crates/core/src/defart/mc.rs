use num_traits::Zero;

use super::ArtinAlgebra;
use crate::dgla::{Dgla, TensorElement};
use crate::homalg::scalar::frac;
use crate::homalg::{solve, vec_is_zero, CohomologyPresentation, Matrix, Scalar, SolveOutcome};
use crate::{Error, Result, MAX_NIL_INDEX};

/// `dx + ½[x,x]`.
pub fn mc_residual(l: &Dgla, a: &ArtinAlgebra, x: &TensorElement) -> Result<TensorElement> {
    if !x.is_homogeneous_of(l, 1) {
        return Err(Error::input("Maurer-Cartan residual is defined on degree-1 elements"));
    }
    Ok(x.d(l).add(&x.bracket(l, a, x).scale(&frac(1, 2))))
}

/// `H¹(L)`.
pub fn tangent_space(l: &Dgla) -> CohomologyPresentation {
    l.cohomology(1)
}

fn check_class(h1: &CohomologyPresentation, xi: &[Scalar]) -> Result<()> {
    if xi.len() != h1.dimension {
        return Err(Error::input(format!(
            "tangent class has {} coordinates, H1 has dimension {}",
            xi.len(),
            h1.dimension
        )));
    }
    Ok(())
}

/// Class of `−½[z,z]` in `H²` for the chosen representative `z` of `ξ`.
pub fn primary_obstruction(l: &Dgla, xi: &[Scalar]) -> Result<Vec<Scalar>> {
    let h1 = tangent_space(l);
    check_class(&h1, xi)?;
    let z = l.embed(1, &h1.lift(xi));
    if !vec_is_zero(&l.d(&z)) {
        return Err(Error::Invariant("tangent representative is not a cycle".into()));
    }
    let w: Vec<Scalar> = l.bracket(&z, &z).iter().map(|c| c * frac(-1, 2)).collect();
    Ok(l.cohomology(2).classify(l.space().component(&w, 2)))
}

/// Result of extending `ξ·t` to a Maurer–Cartan element over `ℚ[t]/(t^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingState {
    pub tangent: Vec<Scalar>,
    /// Requested `k`.
    pub order: usize,
    /// `x₁, x₂, …` as local coordinates in `L¹`; `x = Σ xᵢ tⁱ`.
    pub partial_solution: Vec<Vec<Scalar>>,
    /// Largest `k′ ≤ k` with a lift over `ℚ[t]/(t^{k′})` found.
    pub reached: usize,
    /// Failing power of `t` and the class in `H²` of the stage right-hand side.
    pub obstruction: Option<(usize, Vec<Scalar>)>,
}

impl LiftingState {
    pub fn succeeded(&self) -> bool {
        self.obstruction.is_none()
    }
}

/// Solves `dxᵢ = −½ Σ_{a+b=i} [x_a, x_b]` for `i = 2, …, k−1`.
///
/// Each stage takes the solution of minimal support. When a stage fails, one retry
/// adjusts the previous stage by a cycle, which keeps all earlier equations and shifts
/// the failing right-hand side by `−[x₁, z]`.
pub fn lift_order(l: &Dgla, xi: &[Scalar], k: usize) -> Result<LiftingState> {
    if !(2..=MAX_NIL_INDEX).contains(&k) {
        return Err(Error::input(format!("order {k} outside 2..={MAX_NIL_INDEX}")));
    }
    let h1 = tangent_space(l);
    check_class(&h1, xi)?;
    let h2 = l.cohomology(2);
    let d1 = l.complex().d(1);
    let s = l.space();
    let mut xs: Vec<Vec<Scalar>> = vec![h1.lift(xi)];
    let glob = |v: &[Scalar]| l.embed(1, v);
    let rhs_at = |xs: &[Vec<Scalar>], i: usize| -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); s.total_dim()];
        for a in 1..i {
            let b = i - a;
            let br = l.bracket(&glob(&xs[a - 1]), &glob(&xs[b - 1]));
            for (x, y) in acc.iter_mut().zip(br) {
                *x += y;
            }
        }
        s.component(&acc, 2).iter().map(|c| c * frac(-1, 2)).collect()
    };
    for i in 2..k {
        let rhs = rhs_at(&xs, i);
        if let SolveOutcome::Solved(x) = solve(&d1, &rhs)? {
            xs.push(x);
            continue;
        }
        if i >= 3 {
            if let Some(z) = adjust_previous(l, &h2, &xs, &rhs)? {
                let last = xs.len() - 1;
                for (x, y) in xs[last].iter_mut().zip(z) {
                    *x += y;
                }
                let rhs = rhs_at(&xs, i);
                if let SolveOutcome::Solved(x) = solve(&d1, &rhs)? {
                    xs.push(x);
                    continue;
                }
                return Err(Error::Invariant("adjusted lifting stage is still inconsistent".into()));
            }
        }
        let class = h2.classify(&rhs);
        return Ok(LiftingState {
            tangent: xi.to_vec(),
            order: k,
            partial_solution: xs,
            reached: i,
            obstruction: Some((i, class)),
        });
    }
    Ok(LiftingState { tangent: xi.to_vec(), order: k, partial_solution: xs, reached: k, obstruction: None })
}

/// A cycle `z` with `[rhs − [x₁, z]] = 0` in `H²`, if one exists.
fn adjust_previous(
    l: &Dgla,
    h2: &CohomologyPresentation,
    xs: &[Vec<Scalar>],
    rhs: &[Scalar],
) -> Result<Option<Vec<Scalar>>> {
    if h2.dimension == 0 {
        return Ok(None);
    }
    let cycles = crate::homalg::kernel_basis(&l.complex().d(1));
    if cycles.is_empty() {
        return Ok(None);
    }
    let x1 = l.embed(1, &xs[0]);
    let cols: Vec<Vec<Scalar>> = cycles
        .iter()
        .map(|z| {
            let br = l.bracket(&x1, &l.embed(1, z));
            h2.classify(l.space().component(&br, 2))
        })
        .collect();
    let m = Matrix::from_columns(&cols, h2.dimension);
    let target = h2.classify(rhs);
    Ok(match solve(&m, &target)? {
        SolveOutcome::Inconsistent => None,
        SolveOutcome::Solved(c) => {
            let mut z = vec![Scalar::zero(); cycles[0].len()];
            for (ci, cyc) in c.iter().zip(&cycles) {
                for (x, y) in z.iter_mut().zip(cyc) {
                    *x += ci * y;
                }
            }
            Some(z)
        }
    })
}

/// `Σ xᵢ ⊗ tⁱ` over `ℚ[t]/(t^k)` from a lifting state.
pub fn lift_as_tensor(l: &Dgla, state: &LiftingState) -> (ArtinAlgebra, TensorElement) {
    let a = ArtinAlgebra::truncated("t", state.reached.max(2));
    let mut t = TensorElement::zero(l, &a);
    for (i, x) in state.partial_solution.iter().enumerate().take(a.dim()) {
        t.columns[i] = l.embed(1, x);
    }
    (a, t)
}
