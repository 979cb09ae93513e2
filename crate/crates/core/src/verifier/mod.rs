//! Residual engines, seeded samplers, and witness-search oracles.
//!
//! Every check draws its points from a [`SampleSpec`] before evaluating
//! anything, evaluates them in parallel, and reduces in sample order, so a
//! report depends only on the function, the spec, and the tolerance.

mod checks;
mod classify;
mod oracle;
mod report;
mod residual;

pub use crate::sample::{Region, SampleSpec, Sampler, CONE_FLOOR_RATIO};
pub use checks::{
    associativity_phi, check_associativity, check_ent_special, check_entropy_classic, check_feim,
    check_h_symmetry, check_homogeneity, check_modified, check_symmetry, symmetry_witness,
    AssociativityOutcome,
};
pub use classify::{classify, Classification};
pub use oracle::{oracle_lemma_log, oracle_lemma_mult, oracle_normalization, shifted_solution};
pub use report::{ResidualReport, Terms, Tolerance, Witness};
pub use residual::{
    residual_ent_special, residual_entropy_classic, residual_feim, residual_homogeneity,
    residual_modified, symmetry_gap,
};
