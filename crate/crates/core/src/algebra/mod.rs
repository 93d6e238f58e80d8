//! Exact polynomial algebra: univariate polynomials over the rationals,
//! binary forms with projective root counting, and symbolic 3x3
//! determinants.

pub mod form;
pub mod matrix;
pub mod poly;

pub use form::{distinct_projective_roots, BinaryForm, RootCount};
pub use matrix::{det3, det3_general, SymMatrix3};
pub use poly::{poly_gcd, squarefree_part, Poly};
