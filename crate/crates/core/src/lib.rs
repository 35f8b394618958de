//! Dynamical Yang-Baxter maps from finite s-sets and quasigroups.
//!
//! The pipeline runs s-set → ternary operation `η_I` → `μ` → `σ(λ)` →
//! presentation, with an exhaustive checker for every identity along the way.

pub mod algebra;
pub mod cli;
pub mod dybm;
pub mod hopfcat;
pub mod perm;
pub mod quasigroup;
pub mod report;
pub mod search;
pub mod sset;
pub mod ternary;

pub use algebra::{
    cyclotomic, poly_divides, poly_eval_mod, residue_inverse, IntPoly, ModuleVec, Modulus, Residue,
};
pub use dybm::{
    build_sigma, check_bijective, check_dybe, check_mu_identities, check_qdybe,
    check_unique_solvability, mu_from_eta, to_r_form, Bijection, DynamicalMap, RForm,
};
pub use hopfcat::{
    check_fundamental_l, check_sigma_morphism, emit_presentation, shift_operator, sigma_indicator,
    GradedPermutation, Presentation,
};
pub use quasigroup::{random_latin_square, validate_latin_square, Quasigroup};
pub use report::Report;
pub use search::{first_word, search_words};
pub use sset::{
    affine_eta, affine_sset, conjugation_sset, eta_table, eval_word, phi_of_word, search_roots,
    validate_sset, AffineSSet, FiniteSSet, Word,
};
pub use ternary::{check_displacement, check_hps, AffineTernary, TernaryOp, TernaryTable};
