//! Finite-level models of pointed torsors under étale group schemes.
//!
//! Groups are dense multiplication tables over `0..order`; torsors are finite sets with
//! explicit permutation actions. Every constructed value is validated.

pub mod action;
pub mod error;
pub mod examples;
pub mod group;
pub mod hom;
pub mod perm;
pub mod small;
pub mod subgroup;
pub mod systems;
pub mod torsor;

/// Element id inside a [`FiniteGroup`].
pub type Elem = usize;

pub use action::{
    automorphism_from_images, generated_transformation_group, semidirect_product, AutAction, SemidirectProduct,
    TransformationGroup,
};
pub use error::{GroupError, Side, SystemError, TorsorError, TwistWitness};
pub use group::FiniteGroup;
pub use hom::{are_isomorphic, enumerate_homs, find_isomorphism, GroupHom};
pub use perm::Perm;
pub use subgroup::{quotient_by_normal, Conjugation, Quotient, Subgroup};
pub use torsor::{
    BaseDatum, EtaleGroup, GaloisContext, PointedTorsor, TorsorData, TorsorGenerators, TorsorMorphism,
    TranslationCocycle,
};
