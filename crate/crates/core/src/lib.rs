//! Amenability constants of Fourier algebras of finite groups.
//!
//! The constant is computed exactly from the irreducible character degrees as
//! `Σ d³ / Σ d²`; the degrees come from the class algebra over a prime field.
//! Independent floating-point routes (a regular-representation spectrum for
//! the degrees, and the trace norm of the anti-diagonal indicator on `G × G`
//! for the constant itself) cross-check the exact pipeline.
//!
//! Permutations compose right-to-left throughout: `p.compose(&q)` applies `q` first.

pub mod amen;
pub mod chardeg;
pub mod fourier;
pub mod numlin;
pub mod perm;

pub use amen::{
    amenability_constant, analyze, check_abelian_iff_one, check_johnson_gap, check_multiplicativity,
    check_thoma, check_upper_bound, product_degrees, sup_degree, AmenabilityReport, AnalysisError,
    AnalysisOptions, CheckOutcome, CheckStatus, Rational,
};
pub use chardeg::{character_degrees, regular_degree_oracle, DegreeVector};
pub use fourier::{
    anti_diagonal, antidiagonal_norm_check, fourier_algebra_norm, idempotent_norm_scan,
    is_antidiagonal_subgroup, Complex64, GroupFunction, IdempotentScan, OracleResult,
};
pub use numlin::{eigenvalues_symmetric, trace_norm, Spectrum, SymMatrix};
pub use perm::{ConjugacyClasses, GroupElements, PermGroup, Permutation};
