//! Exact models of Heisenberg–Weil representations of finite unitary groups,
//! the Howe correspondence for (Sp_2n, O_2^-), and twisted point counts on the
//! varieties that realize them.

pub mod arith;
pub mod cyclo;
pub mod error;
pub mod ff;
pub mod fplin;
pub mod groups;
pub mod heis_weil;
pub mod lusztig;
pub mod howe;
pub mod matrix;
pub mod rep;
pub mod varieties;

pub use error::{Error, Result};

use num_rational::BigRational;

/// Exact cyclotomic number with arbitrary-precision rational coefficients.
pub type CycNum = cyclo::Cyc<BigRational>;
/// Dense matrix over exact cyclotomic numbers.
pub type CycMat = matrix::CycMatrix<BigRational>;
