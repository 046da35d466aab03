//! Gauge embeddings `a ↦ (T_{a,L}, T_{a,R})` and the anomaly quadratic form.
//!
//! The form is `Q_ab = (1/2π) [Tr(T_{a,L}T_{b,L}) − Tr(T_{a,R}T_{b,R})]`.
//! [`AnomalyReport::q`] holds the bracketed trace difference; the `1/2π`
//! factor is kept separately as [`Normalization`].

mod file;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{ExactError, ExactMatrix, ExactScalar};
use crate::liealg::{LieError, MatrixLieAlgebra};

pub use file::{DomainSpec, EmbeddingFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    #[serde(rename = "L")]
    Left,
    #[serde(rename = "R")]
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "L",
            Side::Right => "R",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnomalyError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("T_{side} has {found} matrices, domain dimension is {expected}")]
    Count { side: Side, expected: usize, found: usize },
    #[error("T_{side}[{index}] is not {size}x{size}")]
    Shape { side: Side, index: usize, size: usize },
    #[error("T_{side}[{index}] is not traceless but the target is special linear")]
    NotTraceless { side: Side, index: usize },
    #[error("T_{side} is not a homomorphism on ({a}, {b}): residual {residual}")]
    NotHomomorphism { side: Side, a: usize, b: usize, residual: ExactMatrix },
    #[error("basis index {0} out of range")]
    Index(usize),
    #[error("base point is not an invertible {0}x{0} matrix")]
    BadPoint(usize),
}

/// A scalar `coefficient · π^pi_power`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Normalization {
    #[serde(serialize_with = "crate::exact::serialize_display")]
    pub coefficient: ExactScalar,
    pub pi_power: i32,
}

impl Normalization {
    /// `1/2π`.
    pub fn half_over_pi() -> Self {
        Normalization { coefficient: ExactScalar::from_frac(1, 2), pi_power: -1 }
    }
}

impl std::fmt::Display for Normalization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.pi_power {
            0 => write!(f, "{}", self.coefficient),
            1 => write!(f, "{}·π", self.coefficient),
            p => write!(f, "{}·π^{p}", self.coefficient),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaugeEmbedding {
    domain: MatrixLieAlgebra,
    target_size: usize,
    t_left: Vec<ExactMatrix>,
    t_right: Vec<ExactMatrix>,
    special_linear: bool,
}

impl GaugeEmbedding {
    /// Validates shapes, tracelessness (when `special_linear`) and the
    /// homomorphism property on both sides.
    pub fn new(
        domain: MatrixLieAlgebra,
        target_size: usize,
        t_left: Vec<ExactMatrix>,
        t_right: Vec<ExactMatrix>,
        special_linear: bool,
    ) -> Result<Self, AnomalyError> {
        for (side, ts) in [(Side::Left, &t_left), (Side::Right, &t_right)] {
            if ts.len() != domain.dim() {
                return Err(AnomalyError::Count { side, expected: domain.dim(), found: ts.len() });
            }
            for (index, t) in ts.iter().enumerate() {
                if t.rows() != target_size || t.cols() != target_size {
                    return Err(AnomalyError::Shape { side, index, size: target_size });
                }
                if special_linear && !t.trace().is_zero() {
                    return Err(AnomalyError::NotTraceless { side, index });
                }
            }
            check_homomorphism(&domain, side, ts)?;
        }
        Ok(GaugeEmbedding { domain, target_size, t_left, t_right, special_linear })
    }

    /// `T_L = T_R` = the defining matrices: conjugation of the group on itself.
    pub fn adjoint(domain: MatrixLieAlgebra) -> Result<Self, AnomalyError> {
        let t = domain.basis().to_vec();
        let n = domain.matrix_size();
        let sl = domain.is_special_linear();
        Self::new(domain, n, t.clone(), t, sl)
    }

    /// `T_L` = the defining matrices, `T_R = 0`.
    pub fn left_only(domain: MatrixLieAlgebra) -> Result<Self, AnomalyError> {
        let t = domain.basis().to_vec();
        let n = domain.matrix_size();
        let zero = vec![ExactMatrix::zeros(n, n); t.len()];
        let sl = domain.is_special_linear();
        Self::new(domain, n, t, zero, sl)
    }

    pub fn domain(&self) -> &MatrixLieAlgebra {
        &self.domain
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn t_left(&self) -> &[ExactMatrix] {
        &self.t_left
    }

    pub fn t_right(&self) -> &[ExactMatrix] {
        &self.t_right
    }

    pub fn side(&self, side: Side) -> &[ExactMatrix] {
        match side {
            Side::Left => &self.t_left,
            Side::Right => &self.t_right,
        }
    }

    pub fn special_linear(&self) -> bool {
        self.special_linear
    }

    /// `(X_a)_{g0} = T_{a,L} g0 − g0 T_{a,R}`.
    pub fn fundamental_vector(&self, a: usize, g0: &ExactMatrix) -> Result<ExactMatrix, AnomalyError> {
        let (tl, tr) = match (self.t_left.get(a), self.t_right.get(a)) {
            (Some(l), Some(r)) => (l, r),
            _ => return Err(AnomalyError::Index(a)),
        };
        if g0.rows() != self.target_size || g0.cols() != self.target_size {
            return Err(AnomalyError::BadPoint(self.target_size));
        }
        Ok(tl.checked_mul(g0)?.checked_sub(&g0.checked_mul(tr)?)?)
    }

    /// Unnormalized trace difference and its invariance check.
    pub fn anomaly_form(&self) -> AnomalyReport {
        let d = self.domain.dim();
        let tr = |ts: &[ExactMatrix], a: usize, b: usize| (&ts[a] * &ts[b]).trace();
        let q = ExactMatrix::from_fn(d, d, |a, b| tr(&self.t_left, a, b) - tr(&self.t_right, a, b));
        let invariance_checked = ad_invariance_violation(&self.domain, &q).is_none();
        AnomalyReport {
            anomaly_free: q.is_zero(),
            q,
            invariance_checked,
            normalization: Normalization::half_over_pi(),
        }
    }

    pub fn verdict(&self) -> Verdict {
        let report = self.anomaly_form();
        let theorem_applies = self.domain.is_special_linear();
        let mut warnings = Vec::new();
        let summary = match (report.anomaly_free, theorem_applies) {
            (true, true) => "anomaly-free; Cartan-model closed lift exists; equivariant extension exists",
            (true, false) => "anomaly-free; Cartan-model obstruction vanishes",
            (false, true) => "anomalous; no equivariant extension exists",
            (false, false) => "anomalous; Cartan-model obstruction is nonzero",
        };
        if !theorem_applies {
            warnings.push(format!(
                "domain {} is not sl(n,R): only the algebraic obstruction is reported",
                self.domain.name()
            ));
        }
        if theorem_applies && self.domain.matrix_size() == 2 && !report.anomaly_free {
            warnings.push(
                "sl(2) domain: H^4(BSL(2,R);R) = H^4(BSO(2);R) is nonzero, so a vanishing-cohomology \
                 argument does not apply; the computed Q is reported as is"
                    .to_string(),
            );
        }
        if !report.invariance_checked {
            warnings.push("Q failed the ad-invariance check".to_string());
        }
        Verdict { anomaly_free: report.anomaly_free, theorem_applies, summary: summary.to_string(), warnings, report }
    }
}

fn check_homomorphism(domain: &MatrixLieAlgebra, side: Side, ts: &[ExactMatrix]) -> Result<(), AnomalyError> {
    let c = domain.structure_constants();
    let d = domain.dim();
    for a in 0..d {
        for b in (a + 1)..d {
            let mut residual = ts[a].commutator(&ts[b])?;
            for (k, t) in ts.iter().enumerate() {
                let ck = c.get(a, b, k);
                if !ck.is_zero() {
                    residual = &residual - &t.scale(ck);
                }
            }
            if !residual.is_zero() {
                return Err(AnomalyError::NotHomomorphism { side, a, b, residual });
            }
        }
    }
    Ok(())
}

/// First `(c, a, b)` with `Q([c,a],b) + Q(a,[c,b]) ≠ 0`.
pub fn ad_invariance_violation(domain: &MatrixLieAlgebra, q: &ExactMatrix) -> Option<(usize, usize, usize)> {
    let c = domain.structure_constants();
    let d = domain.dim();
    for x in 0..d {
        for a in 0..d {
            for b in a..d {
                let mut s = ExactScalar::zero();
                for k in 0..d {
                    let ca = c.get(x, a, k);
                    if !ca.is_zero() {
                        s += &(ca * &q[(k, b)]);
                    }
                    let cb = c.get(x, b, k);
                    if !cb.is_zero() {
                        s += &(cb * &q[(a, k)]);
                    }
                }
                if !s.is_zero() {
                    return Some((x, a, b));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnomalyReport {
    /// `Tr(T_{a,L}T_{b,L}) − Tr(T_{a,R}T_{b,R})`, before normalization.
    pub q: ExactMatrix,
    pub anomaly_free: bool,
    pub invariance_checked: bool,
    pub normalization: Normalization,
}

impl AnomalyReport {
    /// `normalization.coefficient · q`, still to be multiplied by `π^pi_power`.
    pub fn normalized_q(&self) -> ExactMatrix {
        if self.normalization.coefficient.is_one() {
            return self.q.clone();
        }
        self.q.scale(&self.normalization.coefficient)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub anomaly_free: bool,
    /// Whether the domain is `sl(n,ℝ)`, where `Q = 0` is equivalent to an
    /// equivariant extension.
    pub theorem_applies: bool,
    pub summary: String,
    pub warnings: Vec<String>,
    pub report: AnomalyReport,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{trace_form, Family};

    fn alg(f: Family, n: usize) -> MatrixLieAlgebra {
        MatrixLieAlgebra::classical(f, n).unwrap()
    }

    #[test]
    fn adjoint_sl3_is_anomaly_free() {
        let emb = GaugeEmbedding::adjoint(alg(Family::Sl, 3)).unwrap();
        let r = emb.anomaly_form();
        assert!(r.anomaly_free && r.q.is_zero() && r.invariance_checked);
        let v = emb.verdict();
        assert!(v.summary.contains("equivariant extension exists"));
        assert!(v.warnings.is_empty());
    }

    #[test]
    fn left_only_sl2_values() {
        let emb = GaugeEmbedding::left_only(alg(Family::Sl, 2)).unwrap();
        let r = emb.anomaly_form();
        assert_eq!(r.q, ExactMatrix::from_int_rows(&[&[2, 0, 0], &[0, 0, 1], &[0, 1, 0]]));
        assert!(!r.anomaly_free);
        assert_eq!(r.normalization.to_string(), "1/2·π^-1");
        let v = emb.verdict();
        assert!(v.summary.starts_with("anomalous"));
        assert_eq!(v.warnings.len(), 1);
    }

    #[test]
    fn left_only_sl3_is_trace_form() {
        let sl3 = alg(Family::Sl, 3);
        let emb = GaugeEmbedding::left_only(sl3.clone()).unwrap();
        assert_eq!(emb.anomaly_form().q, trace_form(&sl3));
        assert!(emb.verdict().warnings.is_empty());
    }

    #[test]
    fn non_sl_domain_is_downgraded() {
        let emb = GaugeEmbedding::adjoint(alg(Family::So, 3)).unwrap();
        let v = emb.verdict();
        assert_eq!(v.summary, "anomaly-free; Cartan-model obstruction vanishes");
        assert!(!v.theorem_applies);
    }

    #[test]
    fn fundamental_vector_cases() {
        let sl2 = alg(Family::Sl, 2);
        let adj = GaugeEmbedding::adjoint(sl2.clone()).unwrap();
        let id = ExactMatrix::identity(2);
        for a in 0..3 {
            assert!(adj.fundamental_vector(a, &id).unwrap().is_zero());
        }
        let left = GaugeEmbedding::left_only(sl2.clone()).unwrap();
        let g0 = ExactMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(left.fundamental_vector(1, &g0).unwrap(), &sl2.basis()[1] * &g0);
        assert!(left.fundamental_vector(7, &g0).is_err());
        assert!(left.fundamental_vector(0, &id.scale(&ExactScalar::from_int(1))).is_ok());
    }

    #[test]
    fn fundamental_vector_swap_identity() {
        // X'(g⁻¹) with sides swapped equals −g⁻¹ X(g) g⁻¹
        let sl2 = alg(Family::Sl, 2);
        let b = sl2.basis().to_vec();
        let p = ExactMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let tr: Vec<_> = b.iter().map(|m| &(&p * m) * &p).collect();
        let emb = GaugeEmbedding::new(sl2.clone(), 2, b.clone(), tr.clone(), true).unwrap();
        let swapped = GaugeEmbedding::new(sl2, 2, tr, b, true).unwrap();
        let g = ExactMatrix::from_int_rows(&[&[3, 1], &[5, 2]]);
        let gi = g.inverse().unwrap();
        for a in 0..3 {
            let lhs = swapped.fundamental_vector(a, &gi).unwrap();
            let rhs = -&(&(&gi * &emb.fundamental_vector(a, &g).unwrap()) * &gi);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rejects_non_homomorphism() {
        let sl2 = alg(Family::Sl, 2);
        let mut t = sl2.basis().to_vec();
        t[0] = t[0].scale(&ExactScalar::from_int(2));
        let err = GaugeEmbedding::new(sl2.clone(), 2, t, vec![ExactMatrix::zeros(2, 2); 3], true).unwrap_err();
        assert!(matches!(err, AnomalyError::NotHomomorphism { side: Side::Left, a: 0, b: 1, .. }));
        let err = GaugeEmbedding::new(sl2.clone(), 2, sl2.basis().to_vec(), vec![], true).unwrap_err();
        assert!(matches!(err, AnomalyError::Count { side: Side::Right, .. }));
        let gl = alg(Family::Gl, 2);
        let err = GaugeEmbedding::adjoint(gl.clone())
            .and_then(|_| GaugeEmbedding::new(gl.clone(), 2, gl.basis().to_vec(), gl.basis().to_vec(), true));
        assert!(matches!(err, Err(AnomalyError::NotTraceless { .. })));
    }
}
