#![forbid(unsafe_code)]
//! Exact determinant, cofactor-sum, minor and inverse computations for
//! additive-multiplicative distance matrices of block graphs.

pub mod error;
pub mod matrix;
pub mod ring;

pub use error::{Error, Result};
pub mod builder;
pub mod graph;
pub mod invariants;
pub mod inverse;
pub mod hypertree;
pub mod datafile;
pub mod verifier;
