//! Deformations of Moore structures.
//!
//! [`base`] treats deformations over an augmented base ring `Λ → R`:
//! push-outs along ring maps, pointed gauge pairs, and the classification
//! of deformations of `m₀` by a map from the universal base. [`jet`] treats
//! one-parameter families over `R[s]/(s^{n+1})`: validity order by order,
//! obstructions, automorphism jets and their exponentials, and the
//! step-by-step removal of coboundary coefficients.

pub mod base;
pub mod jet;

pub use base::{
    classify_miniversal, is_pointed, pointed_conjugate, push_out, universal_deformation, Classification,
    DeformationOverBase, RingHom, UniversalDeformation,
};
pub use jet::{
    integrate_infinitesimal, obstructions_cohomologous_check, trivialize, AutomorphismJet, ComponentImages,
    DeformationJet, ObstructionComparison, Trivialization, TrivializationStep,
};
