//! Relative Chevalley–Eilenberg cohomology `H*(𝔤, 𝔨; ℝ)` and Poincaré
//! series bookkeeping for the spectral sequence `Λ[h_i] ⊗ ℝ[c_i] ⇒ ℝ[c_2, c_4, …]`.

mod complex;
mod pair;
mod series;

use thiserror::Error;

use crate::liealg::LieError;

pub use complex::{invariant_wedge_basis, invariant_wedge_dimension, relative_ce_cohomology, CohomologyReport, DEFAULT_WEDGE_CEILING};
pub use pair::{cartan_complement, ReductivePair};
pub use series::{
    closed_form_applies, e1_page_series, e1_page_series_computed, e_infinity_series, invariant_polynomial_series,
    koszul_cancellation, series_graded_algebra, target_series, transgression_pairs, PoincareSeries,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RelcohError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("subalgebra basis element {0} is not in the ambient algebra")]
    NotSubalgebra(usize),
    #[error("Killing form restricted to the subalgebra is degenerate (radical of dimension {radical})")]
    Degenerate { radical: usize },
    #[error("complement is not stable under the subalgebra")]
    NotStable,
    #[error("wedge degree {q} exceeds dim p = {dim}")]
    Degree { q: usize, dim: usize },
    #[error("resource guard: Λ^{q} has dimension {size}, ceiling is {ceiling}")]
    TooLarge { q: usize, size: usize, ceiling: usize },
    #[error("malformed transgression pair ({h}, {c}): expected c = h + 1")]
    MalformedPair { h: usize, c: usize },
    #[error("generator degrees must be positive")]
    ZeroDegree,
    #[error("n = {0} is out of range")]
    Rank(usize),
}
