//! Exact deformation theory for twisted bundles and complexes.
//!
//! Everything is computed over ℚ with no rounding. The crate is layered:
//!
//! - [`homalg`]: rational matrices, graded spaces, cochain complexes and cohomology.
//! - [`dgla`]: DG Lie algebras, axiom checks, the BCH product, the gauge action and
//!   cyclic pairings.
//! - [`defart`]: local Artinian test rings, Maurer–Cartan elements, obstruction calculus
//!   and the quadraticity / homotopy-abelian probes.
//! - [`scosim`]: semicosimplicial DG Lie algebras, their Čech complexes, the functors
//!   `Z¹_sc` / `H¹_sc`, a truncated Thom–Whitney totalization and Whitney integration.
//! - [`twisted`]: finite ringed nerves, Brauer 2-cocycles, twisted bundles and complexes,
//!   their endomorphism towers and brute-force deformation oracles.

pub mod defart;
pub mod dgla;
mod error;
pub mod homalg;
pub mod scosim;
pub mod twisted;

pub use error::{Error, Result};
pub use homalg::{
    CochainComplex, CohomologyPresentation, GradedSpace, LinearMap, Matrix, Scalar,
};
pub use defart::ArtinAlgebra;
pub use dgla::Dgla;
pub use scosim::SemicosimplicialDgla;

/// Upper bound on nilpotency indices handled anywhere in the crate.
pub const MAX_NIL_INDEX: usize = 8;
