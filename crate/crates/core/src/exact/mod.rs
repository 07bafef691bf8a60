//! Exact scalars and dense linear algebra over the rationals.
//!
//! Every computation in the crate goes through this module. Nothing here uses
//! floating point, so equality tests are exact identities.

mod binom;
mod matrix;
mod rational;

pub use binom::{binomial, factorial};
pub use matrix::{RatMatrix, Rref};
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational literal {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("shape mismatch in {op}: {left:?} vs {right:?}")]
pub struct ShapeError {
    pub op: &'static str,
    pub left: (usize, usize),
    pub right: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies a binary field operation, reporting division by zero as an error.
pub fn rational_arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational, ArithmeticError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatOp {
    Add,
    Mul,
    Commutator,
}

pub fn mat_algebra(a: &RatMatrix, b: &RatMatrix, op: MatOp) -> Result<RatMatrix, ShapeError> {
    match op {
        MatOp::Add => a.try_add(b),
        MatOp::Mul => a.try_mul(b),
        MatOp::Commutator => a.commutator(b),
    }
}
