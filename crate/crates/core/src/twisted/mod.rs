//! Twisted bundles and complexes on finite ringed nerves: validation, Brauer cocycles,
//! endomorphism towers and brute-force deformation oracles.
mod brauer;
mod bundle;
mod endo;
pub mod examples;
mod nerve;
mod oracle;

pub use brauer::{sign_search, validate_brauer, BrauerCocycle, BrauerReport, SignSearch, MAX_SEARCH_EDGES};
pub use bundle::{
    rank_one_search, rank_two_search, signed_permutations, validate_bundle, validate_complex, Gluing,
    RealizationSearch, TwistedBundle, TwistedComplex,
};
pub use endo::{end_algebra, end_dgla, end_tower, BracketKind, EndBasis};
pub use nerve::{validate_nerve, CheckReport, Face, RawNerve, RingedNerve};
pub use oracle::*;
