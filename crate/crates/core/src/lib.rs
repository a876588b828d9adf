//! Symbolic mod-2 algebraic topology at desk scale: the Steenrod algebra
//! with Adem-relation normalization, Steenrod actions on the cohomology of a
//! catalog of closed manifolds, Wu and Stiefel-Whitney characteristic
//! classes and numbers, and the Pontrjagin-Thom decision procedures for the
//! unoriented cobordism ring.
//!
//! Everything is exact arithmetic over F2; every value is immutable after
//! construction and every operation is a pure function, so the whole crate
//! is safe to use from multiple threads.

pub mod charclass;
pub mod cobordism;
pub mod cohomology;
pub mod error;
pub mod f2;
pub mod manifolds;
pub mod partition;
pub mod steenrod;

pub use error::{Error, Result};
