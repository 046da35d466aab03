//! Exact scalars (rationals and Gaussian rationals) and dense linear algebra
//! over them. Nothing in this module rounds.

mod matrix;
mod scalar;
mod sparse;

pub use matrix::{ExactMatrix, Rref};
pub use scalar::ExactScalar;
pub use sparse::{joint_kernel, SparseOperator};

pub(crate) use scalar::rational_to_f64;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid rational literal {0:?}")]
    Parse(String),
}

/// Serializes any `Display` value as a string; used for exact scalars in
/// reports.
pub fn serialize_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
