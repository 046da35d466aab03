//! Symbolic calculus of matrix-valued forms in `g`, `g⁻¹`, `dg` and free
//! constants `T_{a,L}`, `T_{a,R}`.
//!
//! Conventions: `d(αβ) = dα·β + (−1)^{|α|} α·dβ`; `ι_a` is the degree −1
//! derivation with `ι_a dg = T_{a,L} g − g T_{a,R}`; traces are brought to
//! the lexicographically least cyclic rotation, with the Koszul sign
//! `Tr(AB) = (−1)^{|A||B|} Tr(BA)`. π is a formal symbol tracked by its
//! exponent.

mod eval;
mod expr;
mod forms;
mod oracle;
mod suite;
mod word;

use thiserror::Error;

pub use eval::{evaluate, ConstBindings, Evaluation};
pub use expr::{FormExpression, Kind, TermKey};
pub use forms::{lambda, lambda_bracket, lambda_with, mu, quadratic_constant, quadratic_residual, theta, wzw_form};
pub use oracle::{agreement_check, random_expression, random_instance, random_matrix, random_rational, Instance, OracleReport};
pub use suite::{identity_suite, IdentityCheck, PowerSign, SuiteReport};
pub use word::{word_degree, ConstSym, Letter};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WzwError {
    #[error("products involving traced expressions are not supported")]
    TraceProduct,
    #[error("cannot combine matrix-valued and traced expressions")]
    KindMismatch,
    #[error("constant T[{},{}] is unbound", .0.index, .0.side)]
    Unbound(ConstSym),
    #[error("expected {expected} tangent vectors, got {found}")]
    VectorCount { expected: usize, found: usize },
    #[error("expression mixes form degrees {0:?}")]
    Inhomogeneous(Vec<usize>),
    #[error("evaluation point is singular")]
    SingularPoint,
    #[error("matrix sizes do not match")]
    Shape,
}
