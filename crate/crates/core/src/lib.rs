//! Exact-arithmetic construction and verification of super hard Lefschetz
//! actions on flat model manifolds over R, C, H and O.

#![allow(clippy::needless_range_loop)]

pub mod check;
pub mod clifford;
pub mod diffop;
pub mod error;
pub mod holonomy;
pub mod linalg;
pub mod lie_super;
pub mod normed_algebra;
pub mod operators;
pub mod poly;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
pub use normed_algebra::{Algebra, NormedElement};
pub use rational::Rational;
