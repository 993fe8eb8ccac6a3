// Index loops over matrix coordinates are clearer than iterator chains in
// the solver-heavy code here.
#![allow(clippy::needless_range_loop)]

//! Exact-arithmetic calculus for the categories FI_G and VI.
//!
//! The crate materializes both categories at finite truncation, builds
//! graded modules over their category algebras with exact rational or
//! prime-field scalars, implements the shift and coinduction functors with
//! their explicit structural isomorphisms, computes Hom/Ext^1/injectivity
//! and torsion data, and verifies representation-stability multiplicities
//! through wreath-product character theory and the Pieri rule.

pub mod action;
pub mod cat;
pub mod cyclotomic;
pub mod coind;
pub mod error;
pub mod group;
pub mod homology;
pub mod homspace;
pub mod matrix;
pub mod module;
pub mod partition;
pub mod report;
pub mod scalar;
pub mod selftest;
pub mod specht;
pub mod wreath;

pub use cat::{Category, Morphism};
pub use error::{Error, Result};
pub use group::GroupSpec;
pub use matrix::Matrix;
pub use module::{atom, direct_sum, free_module, ModuleHom, TruncatedModule};
pub use scalar::{FieldSpec, Scalar};
