//! Exact-arithmetic algebraic branching programs.
//!
//! The crate builds explicit branching programs for symmetrized elementary
//! symmetric polynomials, noncommutative determinants and rectangular
//! permanents/determinants, supports Hadamard products and matrix-valued
//! evaluation of those programs, and bundles subset dynamic programs for
//! rectangular permanents/determinants over small algebras. Every
//! construction is checked against brute-force polynomial expansions.

pub mod abp;
pub mod algebra;
pub mod apps;
pub mod constructions;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod sets;
pub mod verify;

pub use abp::{
    hadamard_abp, hadamard_abp_pruned, mirror_join, nc_lift, reverse_mirror, Abp, Edge, LinForm,
    TransitionMatrices,
};
pub use error::{Error, Result};
pub use matrix::SquareMat;
pub use poly::{NcPoly, PolyScalar, RectVars, Word, TERM_GUARD};
pub use scalar::{FieldSpec, Fp, Rational, Scalar};
