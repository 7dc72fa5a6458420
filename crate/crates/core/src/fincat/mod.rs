//! Finite categories, functors and natural transformations, with brute-force
//! solvers for universal properties.

pub mod adjoint;
pub mod category;
pub mod construct;
pub mod enumerate;
pub mod functor;
pub mod universal;

pub use adjoint::{check_adjunction, check_equivalence, find_unit, AdjunctionMode};
pub use category::{
    set_size_guard, size_guard, CategoryBuilder, FinCategory, Mor, MorphismRecord, Ob, DEFAULT_SIZE_GUARD,
};
pub use construct::{
    fibre, opposite, product, product_functor, pullback, shapes, subcategory, tabulate, Product, Pullback, Tabulated,
};
pub use enumerate::{find_isomorphism, functors, nat_transformations};
pub use functor::{FunctorData, FunctorTable, NatTransData};
pub use universal::{
    cocone_mediator, cocones, colimit, cone_mediator, cones, find_extremal, is_colimit_cocone, is_limit_cone, limit,
    Cone, ConeIds, Extremal,
};
