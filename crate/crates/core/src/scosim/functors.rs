use super::SemicosimplicialDgla;
use crate::defart::{embed_columns, local_columns, mc_residual, solve_affine, solve_stagewise, ArtinAlgebra, StageOutcome};
use crate::dgla::{bch, gauge_act, Dgla, TensorElement, TensorLie};
use crate::homalg::{LinearMap, Scalar};
use crate::{Error, Result};

/// Candidate element `(l, m)` of `Z¹_sc` with an optional witness `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScMc1Data {
    /// In `g₀¹ ⊗ m_A`.
    pub l: TensorElement,
    /// In `g₁⁰ ⊗ m_A`.
    pub m: TensorElement,
    /// In `g₂⁻¹ ⊗ m_A`.
    pub witness: Option<TensorElement>,
}

impl ScMc1Data {
    pub fn zero(g: &SemicosimplicialDgla, a: &ArtinAlgebra) -> Self {
        ScMc1Data {
            l: TensorElement::zero(g.level(0), a),
            m: TensorElement::zero(g.level(1), a),
            witness: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z1scReport {
    pub holds: bool,
    pub reason: Option<String>,
    pub witness: Option<TensorElement>,
}

impl Z1scReport {
    fn fail(reason: &str) -> Self {
        Z1scReport { holds: false, reason: Some(reason.into()), witness: None }
    }
}

fn face_of(f: &LinearMap, x: &TensorElement) -> TensorElement {
    x.map(|c| f.apply(c))
}

fn require_levels(g: &SemicosimplicialDgla) -> Result<()> {
    if g.top() < 2 {
        return Err(Error::input("Z¹_sc needs levels 0, 1 and 2"));
    }
    Ok(())
}

fn check_shape(l: &Dgla, a: &ArtinAlgebra, x: &TensorElement, degree: i32, what: &str) -> Result<()> {
    if x.columns.len() != a.dim() || x.columns.iter().any(|c| c.len() != l.dim()) {
        return Err(Error::shape(format!("{what} does not match the tower and algebra")));
    }
    if !x.is_homogeneous_of(l, degree) {
        return Err(Error::input(format!("{what} must have degree {degree}")));
    }
    Ok(())
}

/// `∂₀m • (−∂₁m) • ∂₂m` in `g₂⁰ ⊗ m_A`.
fn bch_defect(g: &SemicosimplicialDgla, a: &ArtinAlgebra, m: &TensorElement) -> Result<TensorElement> {
    let ops = TensorLie { dgla: g.level(2), artin: a };
    let m0 = face_of(g.face(2, 0), m);
    let m1 = face_of(g.face(2, 1), m).scale(&-Scalar::from_integer(1.into()));
    let m2 = face_of(g.face(2, 2), m);
    let first = bch(&ops, &m0, &m1, a.nil_index())?;
    bch(&ops, &first, &m2, a.nil_index())
}

/// Checks `dl + ½[l,l] = 0`, `∂₁l = e^m ∗ ∂₀l`, and searches for `n` with
/// `∂₀m • (−∂₁m) • ∂₂m = dn + [∂₂∂₀l, n]`. A supplied witness is tried first.
pub fn z1sc_check(g: &SemicosimplicialDgla, a: &ArtinAlgebra, data: &ScMc1Data) -> Result<Z1scReport> {
    require_levels(g)?;
    check_shape(g.level(0), a, &data.l, 1, "l")?;
    check_shape(g.level(1), a, &data.m, 0, "m")?;
    if let Some(n) = &data.witness {
        check_shape(g.level(2), a, n, -1, "witness")?;
    }
    if !mc_residual(g.level(0), a, &data.l)?.is_zero() {
        return Ok(Z1scReport::fail("l is not Maurer–Cartan"));
    }
    let g1 = g.level(1);
    let l0 = face_of(g.face(1, 0), &data.l);
    let l1 = face_of(g.face(1, 1), &data.l);
    if gauge_act(g1, a, &data.m, &l0)? != l1 {
        return Ok(Z1scReport::fail("∂₁l ≠ e^m ∗ ∂₀l"));
    }
    let g2 = g.level(2);
    let target = bch_defect(g, a, &data.m)?;
    let w = face_of(g.face(2, 2), &l0);
    let residual = |n: &TensorElement| n.d(g2).add(&w.bracket(g2, a, n)).sub(&target);
    if let Some(n) = &data.witness {
        if residual(n).is_zero() {
            return Ok(Z1scReport { holds: true, reason: None, witness: Some(n.clone()) });
        }
    }
    let found = solve_affine(a, g2.space().dim(-1), |cols| {
        Ok(local_columns(g2, 0, &residual(&embed_columns(g2, -1, cols))))
    })?;
    Ok(match found {
        Some(cols) => Z1scReport { holds: true, reason: None, witness: Some(embed_columns(g2, -1, &cols)) },
        None => Z1scReport::fail("no witness"),
    })
}

/// Equivalence data `(a, b)` with `a ∈ g₀⁰ ⊗ m_A`, `b ∈ g₁⁻¹ ⊗ m_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScEquivalence {
    pub a: TensorElement,
    pub b: TensorElement,
}

/// Residual of the equivalence conditions for `(l₀,m₀) ∼ (l₁,m₁)` via `(a, b)`:
/// `e^a ∗ l₀ − l₁` and `(−m₀) • (−∂₁a) • m₁ • ∂₀a − db − [∂₀l₀, b]`.
pub fn equivalence_residual(
    g: &SemicosimplicialDgla,
    art: &ArtinAlgebra,
    d0: &ScMc1Data,
    d1: &ScMc1Data,
    e: &ScEquivalence,
) -> Result<(TensorElement, TensorElement)> {
    let (g0, g1) = (g.level(0), g.level(1));
    let first = gauge_act(g0, art, &e.a, &d0.l)?.sub(&d1.l);
    let ops = TensorLie { dgla: g1, artin: art };
    let minus = -Scalar::from_integer(1.into());
    let k = art.nil_index();
    let mut prod = d0.m.scale(&minus);
    prod = bch(&ops, &prod, &face_of(g.face(1, 1), &e.a).scale(&minus), k)?;
    prod = bch(&ops, &prod, &d1.m, k)?;
    prod = bch(&ops, &prod, &face_of(g.face(1, 0), &e.a), k)?;
    let l0 = face_of(g.face(1, 0), &d0.l);
    let second = prod.sub(&e.b.d(g1)).sub(&l0.bracket(g1, art, &e.b));
    Ok((first, second))
}

/// Decides `(l₀,m₀) ∼ (l₁,m₁)` by a stagewise search for `(a, b)`; returns the data found.
pub fn h1sc_equiv(
    g: &SemicosimplicialDgla,
    art: &ArtinAlgebra,
    d0: &ScMc1Data,
    d1: &ScMc1Data,
) -> Result<Option<ScEquivalence>> {
    for (i, d) in [d0, d1].into_iter().enumerate() {
        let r = z1sc_check(g, art, d)?;
        if !r.holds {
            return Err(Error::input(format!(
                "datum {i} is not in Z¹_sc: {}",
                r.reason.unwrap_or_default()
            )));
        }
    }
    let (g0, g1) = (g.level(0), g.level(1));
    let na = g0.space().dim(0);
    let nb = g1.space().dim(-1);
    let split = |cols: &[Vec<Scalar>]| -> ScEquivalence {
        let ac: Vec<Vec<Scalar>> = cols.iter().map(|c| c[..na].to_vec()).collect();
        let bc: Vec<Vec<Scalar>> = cols.iter().map(|c| c[na..].to_vec()).collect();
        ScEquivalence { a: embed_columns(g0, 0, &ac), b: embed_columns(g1, -1, &bc) }
    };
    let out = solve_stagewise(art, na + nb, |cols| {
        let e = split(cols);
        let (r0, r1) = equivalence_residual(g, art, d0, d1, &e)?;
        let p0 = local_columns(g0, 1, &r0);
        let p1 = local_columns(g1, 0, &r1);
        Ok(p0.into_iter().zip(p1).map(|(mut x, y)| {
            x.extend(y);
            x
        })
        .collect())
    })?;
    Ok(match out {
        StageOutcome::Solved(cols) => Some(split(&cols)),
        StageOutcome::Failed { .. } => None,
    })
}
