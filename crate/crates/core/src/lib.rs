//! Finite implication algebras and the structures they are cryptomorphic to.
//!
//! A finite implication algebra is represented by the antichain of maximal
//! edges of a Sperner hypergraph: the elements are all subsets of some edge,
//! ordered by reverse inclusion, so the empty set is the top. Everything in
//! this crate works on small bitmask-encoded ground sets and needs only
//! `alloc`.
//!
//! * [`hypergraph`]: vertex sets, hypergraphs, Sperner reduction and the
//!   direct intersection/union oracles.
//! * [`algebra`]: the implication algebra of a hypergraph and back.
//! * [`profile`]: implication profiles and the realizability conditions.
//! * [`polymatroid`]: graphical polymatroids, inclusion-exclusion transforms
//!   and the Boolean polymatroid recognizer.
//! * [`iso`]: isomorphism via profile bijections, plus a brute-force poset
//!   oracle.
//! * [`synth`]: recursive synthesis of an edge family from a profile.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod enumerate;
pub mod hypergraph;
pub mod iso;
pub mod polymatroid;
pub mod profile;
pub mod set;
pub mod synth;

pub use algebra::{AlgebraError, ImplicationAlgebra};
pub use enumerate::{enumerate_hypergraphs, EnumerateError, Enumeration, HypergraphEnumerator};
pub use hypergraph::{EdgeFamily, Hypergraph, HypergraphError};
pub use iso::{algebra_iso, hypergraph_iso, poset_iso_oracle, IsoWitness};
pub use polymatroid::{recognize_boolean, PolymatroidFn, Recognition, Rejection};
pub use profile::{check_realizability_conditions, Profile, ProfileError, Verdict};
pub use set::VertexSet;
pub use synth::{realize, realize_to_hypergraph, DegeneracyReport, SynthError};
