//! Exact and numerical machinery for equivariant extensions of invariant
//! differential forms.
//!
//! * [`exact`]: rational / Gaussian-rational scalars and exact linear algebra.
//! * [`liealg`]: matrix Lie algebras, structure constants, Killing form and
//!   ad-invariant polynomials.
//! * [`anomaly`]: gauge embeddings `a ↦ (T_{a,L}, T_{a,R})` and the
//!   anomaly quadratic form `Tr(T_{a,L}T_{b,L} − T_{a,R}T_{b,R})`.
//! * [`wzw`]: a rewriting engine for traced matrix-valued forms in
//!   `g, g⁻¹, dg` that proves the WZW extension identities symbolically.
//! * [`getzler`]: floating-point equivariant group cochains with the
//!   operators `d, ι, d̄, ῑ` and the cup product.
//! * [`relcoh`]: relative Chevalley–Eilenberg cohomology and Poincaré
//!   series bookkeeping.

pub mod anomaly;
pub mod exact;
pub mod getzler;
pub mod liealg;
pub mod relcoh;
pub mod wzw;

pub use anomaly::{AnomalyReport, GaugeEmbedding, Verdict};
pub use exact::{ExactMatrix, ExactScalar};
pub use getzler::{EquivariantCochain, GetzlerConfig, GetzlerReport, PolyForm};
pub use liealg::{Family, MatrixLieAlgebra, ScalarKind, StructureConstants};
pub use relcoh::{PoincareSeries, ReductivePair};
pub use wzw::FormExpression;


