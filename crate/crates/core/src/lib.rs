//! Tight and cover-to-join representations of finite semilattices in finite
//! generalized Boolean algebras, and the corresponding conditions on
//! homomorphisms of finite inverse semigroups.
//!
//! ```
//! use std::sync::Arc;
//! use tightcover_core::enumerate::{enumerate_representations, enumerate_semilattices, powerset_algebra};
//! use tightcover_core::{check, tighten};
//!
//! let chain = Arc::new(enumerate_semilattices(2, false).next().unwrap());
//! let p2 = Arc::new(powerset_algebra(2));
//! for rep in enumerate_representations(&chain, &p2) {
//!     let report = check(&rep);
//!     if report.cover_to_join.is_pass() && !report.tight.is_pass() {
//!         let corner = tighten(&rep).unwrap();
//!         assert!(check(corner.representation()).tight.is_pass());
//!     }
//! }
//! ```

pub mod elemset;
pub mod enumerate;
pub mod lattice;
pub mod representation;
pub mod semigroup;

pub use elemset::{ElemSet, MAX_ELEMENTS};
pub use lattice::{
    AlgebraInput, Carrier, FiniteGenBoolAlg, FiniteMeetSemilattice, IdealView, LatticeError,
    MeetStructure, SemilatticeInput,
};
pub use representation::{
    check, is_cover_to_join, is_nondegenerate, is_tight, tighten, Representation,
    RepresentationError, TightenError, Tightening, TightnessReport, Verdict,
};
pub use semigroup::{
    check_homomorphism_tightness, tighten_homomorphism, Corner, FiniteInverseSemigroup,
    ISHomomorphism, SemigroupError, SemigroupInput,
};
