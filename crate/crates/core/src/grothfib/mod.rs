//! Total categories of algebras over a parametrized structure, their
//! projection fibrations, reindexing, the hat comparison, 1-cells between
//! parametrized structures and universal fibrations.

pub mod cell;
pub mod comparison;
pub mod fibration;
pub mod split;
pub mod total;
pub mod universal;

pub use cell::{map_total, OplaxCell};
pub use comparison::{em_hat_comparison, HatComparison};
pub use fibration::{verify_fibration, Fibration, FibrationCheck, Lift};
pub use split::{identity_fibration, GrothendieckTotal, SplitFibrationData};
pub use total::{build_total, reindex, Flavor, TotalCategory, TotalObject, Variance};
pub use universal::{check_pullback, universal_total, UniversalFibration};
