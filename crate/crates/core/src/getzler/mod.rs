//! Equivariant De Rham cochains `f(g_1, …, g_k | X)` for a linear matrix
//! group action on `ℝ^m`, valued in `S𝔤* ⊗ Ω•(ℝ^m)` with polynomial
//! coefficients.
//!
//! `d` and `ι` are exact polynomial operations. `d̄` and the cup product
//! only use group multiplication and substitution. `ῑ` differentiates along
//! one-parameter subgroups by central differences, so it is the only source
//! of approximation error.
//!
//! The group acts on values from the right: `ρ(g)F(X) = L_g^* F(Ad(g)X)`
//! with `L_g(x) = g x`. The fundamental field of `X` is `x ↦ X x`.

mod action;
mod check;
mod cochain;
mod field;
mod polyform;
mod sampler;

use thiserror::Error;

use crate::liealg::LieError;

pub use action::{ActionKind, GroupAction};
pub use check::{
    associativity_residual, cartan_differential, cartan_inclusion, killing_invariant, leibniz_residual,
    normalization_residual, point_cartan_vanishes, residual_at, run_checks, square_residual, CartanInclusion,
    GetzlerConfig, GetzlerReport, Tolerances,
};
pub use cochain::{op_d, op_dbar, op_ibar, op_iota, CochainSum, EquivariantCochain, GetzlerOperators};
pub use field::{Field, SqMat};
pub use polyform::{Monomial, PolyForm};
pub use sampler::{random_cochain, random_polyform, ExactSampler, GroupSampler};

#[derive(Debug, Error)]
pub enum GetzlerError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("{0} has non-real basis matrices")]
    NotReal(String),
    #[error("ambient dimension {ambient} is neither 0 nor the matrix size {matrix_size}")]
    Ambient { ambient: usize, matrix_size: usize },
    #[error("expected {expected} group arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("expected a {expected}x{expected} group element, got {got}x{got}")]
    Shape { expected: usize, got: usize },
    #[error("group element is singular")]
    Singular,
    #[error("contraction ῑ needs arity at least 1")]
    ZeroArity,
    #[error("matrix exponential unavailable in exact arithmetic")]
    NoExponential,
    #[error("cochain has no single polynomial degree")]
    Inhomogeneous,
    #[error("no unipotent or integral torus basis elements in {0} to sample from")]
    NoExactSampler(String),
}
