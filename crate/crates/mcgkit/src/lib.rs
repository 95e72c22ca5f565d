//! Toolkit for computations in mapping class groups of compact orientable
//! surfaces with one boundary component.
//!
//! The crate is organized in layers:
//!
//! * [`word`]: freely reduced words over a finite alphabet, with a small
//!   expression grammar for building them.
//! * [`autfree`]: endomorphisms of a free group given by generator images,
//!   and the table of Dehn twist actions on the fundamental group of the
//!   surface (free of rank `2g`).
//! * [`symplectic`]: the induced action on first homology: integer
//!   symplectic matrices and transvections.
//! * [`catalog`]: named generators, relator families, and full presentations
//!   of the mapping class groups, plus fixture relations used by the test
//!   suites.
//! * [`verifier`]: evaluates relators in the fundamental-group and homology
//!   representations and produces machine-readable reports.
//! * [`rewrite`]: elementary rewriting (braid moves, commutations, free
//!   cancellation) with replayable derivation scripts.
//! * [`farey`]: primitive vectors, paths in the Farey graph, and reduction
//!   of closed paths to a point with checkable certificates.

pub mod autfree;
pub mod catalog;
pub mod farey;
pub mod rewrite;
pub mod symplectic;
pub mod verifier;
pub mod word;
