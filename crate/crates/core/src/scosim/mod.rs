//! Semicosimplicial DG Lie algebras: identities, Čech complexes, the functors `Z¹_sc`
//! and `H¹_sc`, and a truncated Thom–Whitney totalization with Whitney integration.

mod forms;
mod functors;
mod tot;
mod tower;

pub use forms::{monomials, Form, Monomial};
pub use functors::{equivalence_residual, h1sc_equiv, z1sc_check, ScEquivalence, ScMc1Data, Z1scReport};
pub use tot::{tot_tw, whitney_integrate, whitney_integrate_cochain, whitney_section, whitney_section_cochain, ThomWhitney, TotElement};
pub use tower::{cech_complex, check_semicosimplicial, CechComplex, IdentityViolation, RawTower, SemicosimplicialDgla, TowerReport, simplices_of};
