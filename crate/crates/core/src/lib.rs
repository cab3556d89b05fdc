//! Graded-commutative algebra engine.
//!
//! The quaternions carry a `Z2 x Z2 x Z2` grading under which their product is
//! graded commutative; the octonions admit no such grading for any `Z2^m`.
//! This crate builds the relevant structure tables exactly over `Q`, decides
//! grading existence for finite signed-basis algebras through an `F2` parity
//! system, and quaternionizes real Lie algebras into `Z2^3`-graded ones.

pub mod algebra;
pub mod cli;
mod error;
pub mod grading;
pub mod json;
pub mod lie;
pub mod monomials;
pub mod rational;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use grading::{F2Matrix, GradeVec};
pub use monomials::{Sign, SignedMonomial, SquareConvention};
pub use solver::Grading;
