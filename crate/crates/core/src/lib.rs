//! Mapping-class groups of connected sums of prime 3-manifolds.
//!
//! The crate is layered bottom-up:
//!
//! * [`word`], [`presentation`], [`abelian`]: free words, finitely presented
//!   groups, free-product normal forms and abelianization.
//! * [`perm`], [`catalog`], [`homs`]: permutation groups, the shipped finite
//!   group catalog and exhaustive homomorphism search.
//! * [`decider`]: the word problem for residually finite groups by running a
//!   relator-insertion search and a finite-quotient search side by side.
//! * [`manifold`]: prime and connected-sum descriptors, fundamental groups,
//!   spinoriality and lens-space classification.
//! * [`mcg`]: mapping-class generators, their action on `π₁`, the particle
//!   group and cataloged presentations.
//! * [`reps`]: unitary representations of `ℤ₂ * ℤ₂` and friends.

pub mod abelian;
pub mod catalog;
pub mod decider;
pub mod error;
pub mod homs;
pub mod manifold;
pub mod mcg;
pub mod perm;
pub mod presentation;
pub mod reps;
pub mod word;

pub use abelian::{abelianization, AbelianGroupStructure};
pub use decider::{decide, Budget, Verdict, WordDecider};
pub use error::{Error, Result};
pub use homs::{enumerate_homomorphisms, evaluate_word, GroupHomomorphism};
pub use manifold::{
    extension_type, fundamental_group, fundamental_group_sum, in_hendriks_list, is_spinorial,
    is_spinorial_sum, kernel_rank, lens_homeomorphic, lens_homotopy_equivalent, lens_mcg,
    ConnectedSum, ExtensionVerdict, LensMcg, Prime,
};
pub use mcg::{
    decompose_semidirect, enumerate_generators, induced_automorphism, mcg_presentation,
    particle_group_multiply, McgGenerator, McgGeneratorSet, ParticleGroupElement,
};
pub use perm::{sylow_all_cyclic, Permutation, PermutationGroup};
pub use presentation::{free_product_normal_form, GeneratorSymbol, Presentation};
pub use reps::{
    central_element_scalar, classify_uirs_z2star_z2, commutant_dimension, sector_analysis,
    verify_relations, MatrixRep, SectorLabel,
};
pub use word::{free_reduce, Letter, Word};
