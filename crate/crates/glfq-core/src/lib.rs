//! Exact computations in the partial-isomorphism algebras over finite fields
//! and in the centers of the group algebras of GL(n, F_q).
//!
//! The crate is organised bottom-up: finite fields, polynomials, matrices and
//! subspaces; conjugacy types; partial isomorphisms and their averaged
//! product; then the generic structure constants of the class algebras.

pub mod center;
pub mod conjtype;
pub mod degree1;
pub mod error;
pub mod field;
pub mod group;
pub mod matrix;
pub mod partial_iso;
pub mod poly;
pub mod ranklaw;
pub mod rational;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result};
