//! Global and local fidelities of pure bipartite states on a 2×d system.
//!
//! The fidelity of two states on the full system never exceeds the fidelity
//! of their reductions to the qubit side. This crate computes both
//! quantities in closed form, decides when they coincide via four explicit
//! conditions on the Schmidt-frame coefficients, and constructs the
//! parametric family of states achieving equality against a given
//! reference state.
//!
//! Modules:
//! - [`numerics`]: 2×2 Hermitian eigensystems, 2×d SVD through the Gram
//!   matrix, and the definition-path Uhlmann fidelity oracle.
//! - [`states`]: state construction, Schmidt decomposition, frames, and
//!   reduced states.
//! - [`fidelity`]: the global and local fidelity closed forms and the
//!   row-pair identity connecting them.
//! - [`conditions`]: the four equality conditions, verdicts, and scalar
//!   factor extractors.
//! - [`generator`]: equality-family construction and Haar-random sampling.
//! - [`json`]: the external state/parameter/report schemas.
//! - [`selftest`]: fixed-seed verification suites.

pub mod conditions;
pub mod error;
pub mod fidelity;
pub mod generator;
pub mod json;
pub mod numerics;
pub mod selftest;
pub mod states;

pub use conditions::{
    analyze_pair, check_equality_conditions, numeric_equality_verdict,
    separable_equality_condition, ConditionReport, PairAnalysis, DEFAULT_CONDITION_TOL,
};
pub use error::{Error, Result};
pub use fidelity::{
    global_fidelity, gram_identity_sides, local_fidelity, local_fidelity_closed_form,
    FidelityPair,
};
pub use generator::{haar_sample, haar_unitary, EqualityFamilyParams, SeparableFamilyParams};
pub use num_complex::Complex64;
pub use numerics::{uhlmann_fidelity, HermitianQubitOperator, Matrix2xD, Svd2xD};
pub use states::{BipartitePureState, DensityMatrixQubit, SchmidtForm};
