//! Exact symbolic computation for the twisted Heisenberg-Virasoro Lie
//! algebra over the rationals.
//!
//! The crate is organized bottom-up:
//!
//! - [`algebra`] — generators, Lie brackets with central terms, the weight
//!   grading, subalgebra classification, and the central reduction map onto
//!   the order-at-most-one differential operator algebra.
//! - [`partitions`] — partitions and pseudopartitions in multiplicity form;
//!   they index every module basis.
//! - [`uea`] — PBW monomials and normal ordering (straightening) in the
//!   universal enveloping algebra.
//! - [`modules`] — Whittaker data, the universal module and its central
//!   reductions, the action, defects (the dot action) and degree statistics.
//! - [`solver`] — Whittaker-vector search by exact linear algebra at bounded
//!   degree, constructive descent to the cyclic vector, nilpotency probes,
//!   bounded submodule membership, and the lemma-verification harness.
//! - [`expr`] — the text grammar for algebra and module elements.
//!
//! All arithmetic is exact (arbitrary-precision rationals); there is no
//! floating-point mode. Every value is immutable after construction and every
//! operation is pure, so everything here is safe to share across threads.

pub mod algebra;
pub mod expr;
pub mod linalg;
pub mod modules;
pub mod partitions;
pub mod rational;
pub mod solver;
pub mod uea;

mod error;

pub use error::{Error, Result};
pub use rational::Rational;
