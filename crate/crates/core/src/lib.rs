//! Exact computation of projective GIT quotients `C^n // G` for subtori
//! `G` of the algebraic torus, through the associated polyhedron.
//!
//! The crate is layered bottom-up:
//!
//! * [`lattice`]: integer matrices, Hermite/Smith forms, integer kernels.
//! * [`polyhedra`]: H-described rational polyhedra, vertex enumeration,
//!   faces, f-vectors and lattice points.
//! * [`cones`]: the homogenization cone, Hilbert bases, graded generators
//!   and relations of the semigroup ring.
//! * [`git`]: linearized torus actions, the action/polyhedron dictionary,
//!   semistability, invariant monomials and Betti numbers.

pub mod cones;
pub mod error;
pub mod git;
pub mod lattice;
pub mod polyhedra;
pub mod serial;

pub use error::{Error, Result};
