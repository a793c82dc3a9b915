//! Artinian base rings, Maurer–Cartan elements, obstructions and formality probes.

mod artin;
mod mc;
mod probes;
mod stagewise;

pub use artin::ArtinAlgebra;
pub use mc::{lift_as_tensor, lift_order, mc_residual, primary_obstruction, tangent_space, LiftingState};
pub use probes::{
    default_samples, homotopy_abelian_probe, quadraticity_probe, HomotopyAbelianReport, QuadraticityReport,
    SampleOutcome,
};
pub use stagewise::{
    embed_columns, gauge_equivalence, local_columns, solve_affine, solve_stagewise, Columns, StageOutcome,
};

#[cfg(test)]
mod tests;
