//! Finite-scale workbench for fibrations of algebras of parametrized monads
//! and endofunctors.
//!
//! Everything is computed by exhaustive search over fully tabulated finite
//! categories; see the crate README for the module map.

pub mod algkit;
pub mod dsl;
pub mod error;
pub mod fincat;
pub mod fixtures;
pub mod grothfib;
pub mod limcolim;
pub mod monadkit;
pub mod par;
pub mod recognize;
pub mod report;

pub use error::{Error, Result};
pub use report::{Law, LawReport, LawViolation, Verdict, Witness, WitnessKind};
