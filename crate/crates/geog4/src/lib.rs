//! Exact-arithmetic library for the geography problem of 4-manifolds with
//! free abelian fundamental group.
//!
//! The crate computes the algebraic invariants that control which pairs
//! (signature, Euler characteristic) are realized by closed oriented
//! 4-manifolds M with pi_1(M) isomorphic to Z^n: exterior-algebra pairings on
//! Lambda^2(Z^n), invariants and classification of symmetric integer bilinear
//! forms, the GL_6(Z) normal form of degree-2 classes, lower-bound engines and
//! q-function bookkeeping, a calculus of manifold constructions, and a bounded
//! search over degree-4 classes on Z^8.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals
//! throughout, no floating point.

pub mod classes;
pub mod constructions;
pub mod error;
pub mod exterior;
pub mod forms;
pub mod geography;
pub mod matrix;
pub mod par;
pub mod search;
pub mod tables;

pub use error::Error;

/// Convenience result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
