use super::tensor::TensorElement;
use super::Dgla;
use crate::defart::ArtinAlgebra;
use crate::homalg::scalar::factorial;
use crate::homalg::Scalar;
use crate::{Error, Result, MAX_NIL_INDEX};

/// `e^a ∗ l = l + Σ_{n≥0} ad_aⁿ/(n+1)! ([a,l] − da)`.
pub fn gauge_act(l: &Dgla, art: &ArtinAlgebra, a: &TensorElement, x: &TensorElement) -> Result<TensorElement> {
    if art.nil_index() > MAX_NIL_INDEX {
        return Err(Error::unsupported(format!(
            "nilpotency index {} exceeds {MAX_NIL_INDEX}",
            art.nil_index()
        )));
    }
    if !a.is_homogeneous_of(l, 0) {
        return Err(Error::input("gauge parameter must have degree 0"));
    }
    if !x.is_homogeneous_of(l, 1) {
        return Err(Error::input("gauge action is defined on degree-1 elements"));
    }
    let mut term = a.bracket(l, art, x).sub(&a.d(l));
    let mut out = x.clone();
    for n in 0..art.nil_index() {
        if term.is_zero() {
            break;
        }
        out = out.add(&term.scale(&(Scalar::from_integer(1.into()) / factorial(n + 1))));
        term = a.bracket(l, art, &term);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::defart::mc_residual;
    use crate::dgla::bch::bch;
    use crate::dgla::examples::*;
    use crate::dgla::tensor::TensorLie;
    use crate::homalg::scalar::int;
    use crate::homalg::Matrix;
    use proptest::prelude::*;

    fn elem(l: &Dgla, a: &ArtinAlgebra, deg: i32, coeffs: &[i64]) -> TensorElement {
        let mut t = TensorElement::zero(l, a);
        let o = l.space().offset(deg);
        let n = l.space().dim(deg);
        for (k, c) in coeffs.iter().enumerate() {
            t.columns[k / n][o + k % n] = int(*c);
        }
        t
    }

    /// Endomorphisms of `ℚ → ℚ → ℚ` in degrees 0, 1, 2 with the first map nonzero.
    fn endo() -> Dgla {
        let s = crate::homalg::GradedSpace::new(
            [(0, vec!["u".to_string()]), (1, vec!["v".to_string()]), (2, vec!["w".to_string()])].into(),
        )
        .unwrap();
        let c = crate::homalg::CochainComplex::from_blocks(s, [(0, Matrix::from_i64(1, 1, &[1]))].into()).unwrap();
        Dgla::endomorphisms(&c)
    }

    #[test]
    fn stabilizer() {
        let l = obstructed();
        let art = ArtinAlgebra::parse("k[t]/(t^3)").unwrap();
        let x = elem(&l, &art, 1, &[3, 1]);
        let a = TensorElement::zero(&l, &art);
        assert_eq!(gauge_act(&l, &art, &a, &x).unwrap(), x);
    }

    #[test]
    fn abelian_action_is_translation() {
        let l = acyclic();
        let art = ArtinAlgebra::parse("k[t]/(t^3)").unwrap();
        let a = elem(&l, &art, 0, &[2, -1]);
        let x = elem(&l, &art, 1, &[1, 5]);
        assert_eq!(gauge_act(&l, &art, &a, &x).unwrap(), x.sub(&a.d(&l)));
    }

    proptest! {
        #[test]
        fn gauge_preserves_mc_on_obstructed_example(c in prop::collection::vec(-5i64..6, 2)) {
            // L⁰ = 0, so the action is trivial and MC-ness is preserved tautologically.
            let l = obstructed();
            let art = ArtinAlgebra::parse("k[t]/(t^3)").unwrap();
            let x = elem(&l, &art, 1, &c);
            let a = TensorElement::zero(&l, &art);
            let y = gauge_act(&l, &art, &a, &x).unwrap();
            prop_assert_eq!(mc_residual(&l, &art, &x).unwrap().is_zero(), mc_residual(&l, &art, &y).unwrap().is_zero());
        }

        #[test]
        fn gauge_conjugates_residual(ac in prop::collection::vec(-3i64..4, 6), xc in prop::collection::vec(-3i64..4, 4)) {
            let l = endo();
            let art = ArtinAlgebra::parse("k[t]/(t^3)").unwrap();
            let a = elem(&l, &art, 0, &ac);
            let x = elem(&l, &art, 1, &xc);
            let y = gauge_act(&l, &art, &a, &x).unwrap();
            // residual(e^a ∗ x) = e^{ad a} residual(x)
            let r = mc_residual(&l, &art, &x).unwrap();
            let mut expected = r.clone();
            let mut term = r;
            for n in 1..4 {
                term = a.bracket(&l, &art, &term).scale(&(Scalar::from_integer(1.into()) / Scalar::from_integer((n as i64).into())));
                expected = expected.add(&term);
            }
            prop_assert_eq!(mc_residual(&l, &art, &y).unwrap(), expected);
        }

        #[test]
        fn action_is_a_group_action(ac in prop::collection::vec(-2i64..3, 12), bc in prop::collection::vec(-2i64..3, 12), xc in prop::collection::vec(-2i64..3, 8)) {
            let l = endo();
            let art = ArtinAlgebra::parse("k[t]/(t^5)").unwrap();
            let a = elem(&l, &art, 0, &ac);
            let b = elem(&l, &art, 0, &bc);
            let x = elem(&l, &art, 1, &xc);
            let ops = TensorLie { dgla: &l, artin: &art };
            let ab = bch(&ops, &a, &b, 5).unwrap();
            let lhs = gauge_act(&l, &art, &a, &gauge_act(&l, &art, &b, &x).unwrap()).unwrap();
            let rhs = gauge_act(&l, &art, &ab, &x).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rejects_wrong_degrees() {
        let l = acyclic();
        let art = ArtinAlgebra::parse("k[t]/(t^2)").unwrap();
        let a = elem(&l, &art, 0, &[1]);
        assert!(gauge_act(&l, &art, &a, &a).is_err());
    }
}
