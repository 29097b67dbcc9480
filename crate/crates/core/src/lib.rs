//! Exact computations for multiplicative Hom-Lie algebras over ℚ.
//!
//! Cochains, the graded brackets built from them (Nijenhuis-Richardson, cup,
//! Frölicher-Nijenhuis, derived), the associated differentials and cohomology,
//! Nijenhuis and Rota-Baxter operators, morphism deformations, and a randomized
//! identity checker.

pub mod algebra_core;
pub mod brackets;
pub mod deformations;
pub mod differentials;
mod error;
pub mod hom_structures;
pub mod io;
pub mod multilinear;
pub mod operators;
pub mod theorem_suite;

pub use error::{Error, Result};
