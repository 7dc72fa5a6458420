//! Limits created in total categories, Linton coproducts, the Freyd swindle
//! and left adjoints to reindexing.

pub mod coproduct;
pub mod fibre;
pub mod limit;
pub mod reindex;
pub mod swindle;

pub use coproduct::linton_coproduct;
pub use fibre::FibreView;
pub use limit::limit_in_total;
pub use reindex::{fibre_left_adjoint, reindex_functor, FibreAdjoint};
pub use swindle::{swindle_left_adjoint, verify_swindle, SwindleStep, SwindleTrace, DEFAULT_SWINDLE_CAP};
