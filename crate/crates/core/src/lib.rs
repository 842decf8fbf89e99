//! Exact bar-construction calculus over ℚ and F_p.
//!
//! The crate builds bar constructions of connected DGAs, two-sided bar
//! constructions with their product, homotopy Gerstenhaber structures coming from
//! interval-cut cochain operations, and computes Tor over polynomial rings both
//! from the bar complex and from a Koszul complex.

#![allow(clippy::type_complexity)]

pub mod algebras;
pub mod bar;
pub mod cochains;
pub mod dg;
pub mod graded;
pub mod hga;
pub mod input;
pub mod linalg;
pub mod product;
pub mod report;
pub mod scalar;
pub mod simplicial;
pub mod suites;
pub mod tor;
pub mod twisted;

pub use graded::Lin;
pub use scalar::{Field, FieldChoice, Fp, Q};
