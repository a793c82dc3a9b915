use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::dgla::examples::{acyclic, obstructed};
use crate::dgla::{gauge_act, Dgla, TensorElement};
use crate::homalg::scalar::{frac, int};
use crate::homalg::{kernel_basis, CochainComplex, GradedSpace, Scalar};

fn abelian(dims: &[(i32, usize)]) -> Dgla {
    Dgla::abelian(CochainComplex::zero_differential(GradedSpace::from_dims(
        &dims.iter().copied().collect(),
        "v",
    )))
}

/// End of `ℚ → ℚ → ℚ` in degrees 0, 1, 2 with zero differential.
fn endo_line() -> Dgla {
    let s = GradedSpace::new(
        [(0, vec!["u".to_string()]), (1, vec!["v".to_string()]), (2, vec!["w".to_string()])].into(),
    )
    .unwrap();
    Dgla::endomorphisms(&CochainComplex::zero_differential(s))
}

/// Brute-force `dim {x ∈ L¹ : dx = 0} − dim {da}` from the raw blocks.
fn tangent_oracle(l: &Dgla) -> usize {
    let d1 = l.complex().d(1);
    let d0 = l.complex().d(0);
    let z = kernel_basis(&d1).len();
    let b = if d0.rows() == 0 || d0.cols() == 0 { 0 } else { d0.rank() };
    z - b
}

#[test]
fn residual_examples() {
    let l = obstructed();
    let a = ArtinAlgebra::parse("k[t]/(t^3)").unwrap();
    let zero = TensorElement::zero(&l, &a);
    assert!(mc_residual(&l, &a, &zero).unwrap().is_zero());
    let x = TensorElement::simple(&l, &a, &l.embed(1, &[int(1)]), 0);
    let r = mc_residual(&l, &a, &x).unwrap();
    // ½ f t²
    assert_eq!(r.entries(&l, &a), vec![("f".to_string(), "t^2".to_string(), frac(1, 2))]);
    let ab = abelian(&[(1, 2), (2, 1)]);
    let y = TensorElement::simple(&ab, &a, &ab.embed(1, &[int(3), int(-1)]), 1);
    assert!(mc_residual(&ab, &a, &y).unwrap().is_zero());
    assert!(mc_residual(&l, &a, &TensorElement::simple(&l, &a, &l.embed(2, &[int(1)]), 0)).is_err());
}

#[test]
fn tangent_examples() {
    assert_eq!(tangent_space(&abelian(&[(1, 3)])).dimension, 3);
    assert_eq!(tangent_space(&acyclic()).dimension, 0);
    assert_eq!(tangent_space(&obstructed()).dimension, 1);
    for l in [abelian(&[(1, 3)]), acyclic(), obstructed(), endo_line()] {
        assert_eq!(tangent_space(&l).dimension, tangent_oracle(&l));
    }
}

#[test]
fn obstruction_examples() {
    assert_eq!(primary_obstruction(&abelian(&[(1, 2), (2, 2)]), &[int(1), int(5)]).unwrap(), vec![int(0), int(0)]);
    assert_eq!(primary_obstruction(&obstructed(), &[int(1)]).unwrap(), vec![frac(-1, 2)]);
    assert_eq!(primary_obstruction(&obstructed(), &[int(0)]).unwrap(), vec![int(0)]);
}

#[test]
fn lifting_examples() {
    let s = lift_order(&abelian(&[(1, 2), (2, 1)]), &[int(1), int(2)], 6).unwrap();
    assert!(s.succeeded());
    assert!(s.partial_solution[1..].iter().all(|x| x.iter().all(Zero::is_zero)));
    let s = lift_order(&obstructed(), &[int(1)], 3).unwrap();
    assert_eq!(s.obstruction, Some((2, vec![frac(-1, 2)])));
    assert_eq!(s.reached, 2);
    assert!(lift_order(&acyclic(), &[], 5).unwrap().succeeded());
}

#[test]
fn successful_lift_is_maurer_cartan() {
    let l = endo_line();
    let h = tangent_space(&l).dimension;
    let xi: Vec<Scalar> = (0..h).map(|i| int(i as i64 + 1)).collect();
    let s = lift_order(&l, &xi, 6).unwrap();
    if s.succeeded() {
        let (a, x) = lift_as_tensor(&l, &s);
        assert!(mc_residual(&l, &a, &x).unwrap().is_zero());
    }
}

#[test]
fn quadraticity_examples() {
    let ab = abelian(&[(1, 2), (2, 1)]);
    let r = quadraticity_probe(&ab, &default_samples(&ab, &[vec![int(2), frac(1, 3)]]), 8).unwrap();
    assert!(r.passed());
    let ob = obstructed();
    let r = quadraticity_probe(&ob, &default_samples(&ob, &[vec![int(3)]]), 8).unwrap();
    assert!(r.passed());
    assert!(r.all_obstructions_primary);
    assert!(r.samples.iter().all(|s| !s.lifts_to_3));
    let e = endo_line();
    let r = quadraticity_probe(&e, &default_samples(&e, &[]), 8).unwrap();
    assert!(r.passed());
}

#[test]
fn homotopy_abelian_examples() {
    let ab = abelian(&[(1, 2), (2, 1)]);
    assert!(!homotopy_abelian_probe(&ab, &default_samples(&ab, &[])).unwrap().not_homotopy_abelian);
    let ob = obstructed();
    let r = homotopy_abelian_probe(&ob, &default_samples(&ob, &[])).unwrap();
    assert!(r.not_homotopy_abelian);
    let (x, y, v) = r.bracket_witness.unwrap();
    assert_eq!((x.as_str(), y.as_str()), ("[e]", "[e]"));
    assert_eq!(v, vec![("[f]".to_string(), int(1))]);
    assert!(!homotopy_abelian_probe(&acyclic(), &[]).unwrap().not_homotopy_abelian);
}

#[test]
fn gauge_equivalence_finds_translates() {
    let l = endo_line();
    let a = ArtinAlgebra::parse("k[t]/(t^4)").unwrap();
    let n0 = l.space().dim(0);
    let n1 = l.space().dim(1);
    let mut g = TensorElement::zero(&l, &a);
    g.columns[0] = l.embed(0, &(0..n0).map(|i| int(i as i64 - 1)).collect::<Vec<_>>());
    g.columns[1] = l.embed(0, &(0..n0).map(|i| int(2 - i as i64)).collect::<Vec<_>>());
    let mut x = TensorElement::zero(&l, &a);
    x.columns[0] = l.embed(1, &(0..n1).map(|i| int(i as i64 + 1)).collect::<Vec<_>>());
    let y = gauge_act(&l, &a, &g, &x).unwrap();
    let found = gauge_equivalence(&l, &a, &x, &y).unwrap().expect("translates are equivalent");
    assert_eq!(gauge_act(&l, &a, &found, &x).unwrap(), y);
    // d = 0, so the t-coefficient is gauge invariant
    let mut z = x.clone();
    z.columns[0] = l.embed(1, &vec![int(1); n1]);
    assert!(gauge_equivalence(&l, &a, &x, &z).unwrap().is_none());
    // a t³ perturbation is absorbed by [a₂t², x₁t]
    let mut w = x.clone();
    w.columns[2] = l.embed(1, &vec![int(1); n1]);
    let found = gauge_equivalence(&l, &a, &x, &w).unwrap().expect("absorbed by the torus action");
    assert_eq!(gauge_act(&l, &a, &found, &x).unwrap(), w);
}

proptest! {
    #[test]
    fn lifting_is_consistent_across_orders(c in prop::collection::vec(-3i64..4, 2)) {
        let l = endo_line();
        let h = tangent_space(&l).dimension;
        let xi: Vec<Scalar> = c.iter().take(h).map(|&v| int(v)).chain(std::iter::repeat(int(0))).take(h).collect();
        let high = lift_order(&l, &xi, 6).unwrap();
        for k in 2..6 {
            let low = lift_order(&l, &xi, k).unwrap();
            if high.succeeded() {
                prop_assert!(low.succeeded());
            }
        }
        // primary obstruction vanishes iff order 3 succeeds
        let ob = primary_obstruction(&l, &xi).unwrap();
        prop_assert_eq!(ob.iter().all(Zero::is_zero), lift_order(&l, &xi, 3).unwrap().succeeded());
    }

    #[test]
    fn gauge_preserves_maurer_cartan(ac in prop::collection::vec(-2i64..3, 6), c in prop::collection::vec(-2i64..3, 2)) {
        let l = endo_line();
        let h = tangent_space(&l).dimension;
        let xi: Vec<Scalar> = c.iter().map(|&v| int(v)).chain(std::iter::repeat(int(0))).take(h).collect();
        let s = lift_order(&l, &xi, 3).unwrap();
        prop_assume!(s.succeeded());
        let (a, x) = lift_as_tensor(&l, &s);
        let n0 = l.space().dim(0);
        let mut g = TensorElement::zero(&l, &a);
        for j in 0..a.dim() {
            g.columns[j] = l.embed(0, &(0..n0).map(|i| int(ac[(j * n0 + i) % ac.len()])).collect::<Vec<_>>());
        }
        let y = gauge_act(&l, &a, &g, &x).unwrap();
        prop_assert!(mc_residual(&l, &a, &y).unwrap().is_zero());
    }
}

#[test]
fn stagewise_reports_failure_level() {
    // u² = t³ over ℚ[t]/(t⁴) has no solution
    let a = ArtinAlgebra::parse("k[t]/(t^4)").unwrap();
    let out = solve_stagewise(&a, 1, |u| {
        let x: Vec<Scalar> = u.iter().map(|c| c[0].clone()).collect();
        let mut sq = a.mul(&x, &x);
        sq[2] -= int(1);
        Ok(sq.into_iter().map(|v| vec![v]).collect())
    })
    .unwrap();
    assert!(matches!(out, StageOutcome::Failed { .. }));
}
