//! Exact discrete convex analysis on integer lattices.
//!
//! Functions ℤⁿ → ℚ ∪ {+∞} and lattice sets are stored on finite windows with
//! exact rationals. On top of that sit membership tests for the usual
//! discrete convexity classes (L♮, M♮, multimodular, integrally convex, jump
//! systems, ...), the operations that act on them, integral conjugacy, and a
//! verifier for which operations preserve which class.

pub mod classify;
pub mod conjugacy;
pub mod error;
pub mod io;
pub mod lab;
pub mod lattice;
pub mod lp;
pub mod model;
pub mod rat;
pub mod transform;

pub use error::{DcaError, Result};
pub use lattice::{HalfPoint, Point};
pub use model::{Ext, LConvexForm, LatticeFunction, LatticeSet, Window};
pub use rat::Rat;
