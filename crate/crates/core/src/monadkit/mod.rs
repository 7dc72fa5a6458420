//! Monads, comonads, monad morphisms and strict parametrized (co)monads, with
//! exhaustive law checks and algebra enumeration.
//!
//! Comonads are always stored as monads on the opposite category.

pub mod algebra;
pub mod monad;
pub mod param;

pub use algebra::{
    algebra_id, cokleisli, eilenberg_moore, enumerate_algebras, is_em_algebra, kleisli, kleisli_flavored, AlgFlavor,
    AlgebraObject, EmCategory, KlFlavor,
};
pub use monad::{
    check_monad, check_monad_morphism, monad_morphisms, opposite_arc, ComonadData, MonadData, MonadMorphismData,
};
pub use param::{
    check_param, cokleisli_self_composite, hat, two_variable, Hat, ParamComonadData, ParamEndofunctorData,
    ParamMonadData, ParamRef,
};
