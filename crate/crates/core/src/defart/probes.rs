use num_traits::Zero;

use super::mc::{lift_order, tangent_space, LiftingState};
use crate::dgla::Dgla;
use crate::homalg::Scalar;
use crate::{Error, Result, MAX_NIL_INDEX};

/// Liftability of one tangent class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleOutcome {
    pub class: Vec<Scalar>,
    pub lifts_to_3: bool,
    pub lifts_to_k: bool,
    pub state: LiftingState,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticityReport {
    pub order: usize,
    pub samples: Vec<SampleOutcome>,
    /// Indices of samples lifting to order 3 but not to the requested order.
    pub violations: Vec<usize>,
    /// Every failing sample already fails at `t²`.
    pub all_obstructions_primary: bool,
}

impl QuadraticityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub const NOTE: &'static str = "liftability along curvilinear bases only; a violation certifies \
        non-formality, passing certifies nothing";
}

/// The standard basis of `H¹` followed by `extra` samples.
pub fn default_samples(l: &Dgla, extra: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let h = tangent_space(l).dimension;
    let mut out: Vec<Vec<Scalar>> = (0..h)
        .map(|i| {
            let mut v = vec![Scalar::zero(); h];
            v[i] = Scalar::from_integer(1.into());
            v
        })
        .collect();
    out.extend(extra.iter().cloned());
    out
}

/// Compares liftability to order 3 and to order `k` for each sampled class.
pub fn quadraticity_probe(l: &Dgla, samples: &[Vec<Scalar>], k: usize) -> Result<QuadraticityReport> {
    if !(3..=MAX_NIL_INDEX).contains(&k) {
        return Err(Error::input(format!("order {k} outside 3..={MAX_NIL_INDEX}")));
    }
    let mut out = Vec::new();
    let mut violations = Vec::new();
    let mut primary = true;
    for (i, xi) in samples.iter().enumerate() {
        let state = lift_order(l, xi, k)?;
        let lifts_to_3 = state.reached >= 3;
        let lifts_to_k = state.succeeded();
        if lifts_to_3 && !lifts_to_k {
            violations.push(i);
            primary = false;
        }
        out.push(SampleOutcome { class: xi.clone(), lifts_to_3, lifts_to_k, state });
    }
    Ok(QuadraticityReport { order: k, samples: out, violations, all_obstructions_primary: primary })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyAbelianReport {
    pub bracket_vanishes: bool,
    /// Labels of two cohomology classes with nonzero bracket, and the bracket.
    pub bracket_witness: Option<(String, String, Vec<(String, Scalar)>)>,
    /// Samples that fail to lift to order 8.
    pub lifting_failures: Vec<SampleOutcome>,
    pub not_homotopy_abelian: bool,
}

impl HomotopyAbelianReport {
    pub const NOTE: &'static str = "necessary conditions only; passing certifies nothing";
}

/// Checks that the induced bracket on `H` vanishes and that every sample lifts to order 8.
pub fn homotopy_abelian_probe(l: &Dgla, samples: &[Vec<Scalar>]) -> Result<HomotopyAbelianReport> {
    let h = l.cohomology_bracket().algebra;
    let s = h.space();
    let mut witness = None;
    'outer: for i in 0..s.total_dim() {
        for j in 0..s.total_dim() {
            let v = h.bracket_basis(i, j);
            if !v.is_empty() {
                let val = v.iter().map(|(k, c)| (s.label(*k).to_string(), c.clone())).collect();
                witness = Some((s.label(i).to_string(), s.label(j).to_string(), val));
                break 'outer;
            }
        }
    }
    let mut failures = Vec::new();
    for xi in samples {
        let state = lift_order(l, xi, MAX_NIL_INDEX)?;
        if !state.succeeded() {
            failures.push(SampleOutcome {
                class: xi.clone(),
                lifts_to_3: state.reached >= 3,
                lifts_to_k: false,
                state,
            });
        }
    }
    Ok(HomotopyAbelianReport {
        bracket_vanishes: witness.is_none(),
        not_homotopy_abelian: witness.is_some() || !failures.is_empty(),
        bracket_witness: witness,
        lifting_failures: failures,
    })
}
