//! Exact arithmetic for the numerical side of threefolds uniruled by lines.
//!
//! - [`algebra`]: rationals, binary forms, root counting, symbolic determinants
//! - [`bundle`]: intersection numbers on plane bundles over a curve
//! - [`fano`]: the polarized Q-Fano table and its closed forms
//! - [`classify`]: the degree-one uniruledness verdict engine
//! - [`veronese`]: degenerate-fiber counting on `P^2 x P^1`
//! - [`selftest`]: end-to-end reproduction checks

pub mod algebra;
pub mod bundle;
pub mod classify;
pub mod error;
pub mod fano;
pub mod rational;
pub mod selftest;
pub mod veronese;

pub use error::{Error, Result};
pub use rational::Rational;
