//! Finite monoids and groups, actions, semidirect products and the
//! semidirect-product / conjugation adjunction.

pub mod action;
pub mod hom;
pub mod monoid;

pub use action::{
    action_morphism_check, canonical_maps, check_semidirect_adjunction, conjugation_rep, monoid_semidirect, semidirect,
    semidirect_map, ActionAlgebra, SemidirectAdjunction,
};
pub use hom::{find_isomorphism, generators, homomorphism_violation, homomorphisms, is_homomorphism};
pub use monoid::{FinGroup, FinMonoid};
