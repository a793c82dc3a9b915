//! Exact linear algebra over ℚ, graded spaces, cochain complexes and cohomology.

mod commalg;
mod complex;
mod graded;
mod matrix;
pub mod scalar;

pub use commalg::{AlgMatrix, CommAlgebra};
pub use complex::{
    is_quasi_iso, ChainMap, CochainComplex, CohomologyPresentation, DegreeReport, QuasiIsoReport,
};
pub use graded::{GradedSpace, LinearMap};
pub use matrix::{kernel_basis, kernel_with_free_columns, solve, Matrix, Rref, SolveOutcome};
pub use scalar::Scalar;

pub(crate) use matrix::{extend_basis, vec_add, vec_is_zero, vec_scale, vec_sub};
