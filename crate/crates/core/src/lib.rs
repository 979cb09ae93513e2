//! Solution families of the modified entropy equation
//!
//! ```text
//! f(x, y, z) = f(x, y+z, 0) + μ(y+z) · f(0, y/(y+z), z/(y+z))
//! ```
//!
//! on the positive cone of `R^k`, with numerical verifiers for the equation,
//! its classic and FEIM relatives, and witness-search oracles for the
//! symmetry lemmas and normalization constraints.
//!
//! ```
//! use modent::{verifier, MultFn, SampleSpec, Tolerance, TriSolution};
//!
//! let shannon = TriSolution::shannon(std::f64::consts::E).unwrap();
//! let spec = SampleSpec::cone(1, 1000, 7);
//! let report =
//!     verifier::check_modified(&shannon, &MultFn::identity(), &spec, Tolerance::default()).unwrap();
//! assert!(report.pass);
//! ```

pub mod cli;
pub mod cone;
pub mod dsl;
pub mod error;
pub mod family;
pub mod sample;
pub mod solutions;
pub mod verifier;

pub use cone::{cw_add, cw_div, cw_mul, cw_scale, Closure, PosVec};
pub use dsl::Expr;
pub use error::{Error, Result};
pub use family::{log_eval, mult_eval, LogFn, MultFn};
pub use sample::{Region, SampleSpec};
pub use solutions::{
    Case, CaseId, HFn, PsiFn, PsiSpec, SolutionDescriptor, TriSolution,
};
pub use verifier::{Classification, ResidualReport, Tolerance, Witness};
