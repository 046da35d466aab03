use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact::{ExactMatrix, ExactScalar};

use super::eval::{evaluate, ConstBindings};
use super::expr::{FormExpression, Kind};
use super::forms::{lambda, lambda_bracket, quadratic_constant, quadratic_residual, wzw_form};
use super::word::{ConstSym, Letter};
use super::WzwError;

/// A pointwise evaluation site.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub point: ExactMatrix,
    pub vectors: Vec<ExactMatrix>,
    pub bindings: ConstBindings,
}

/// `p/q` with `|p| ≤ 4`, `1 ≤ q ≤ 3`.
pub fn random_rational(rng: &mut impl Rng) -> ExactScalar {
    ExactScalar::from_frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n, n, |_, _| random_rational(rng))
}

/// Invertible point, `vectors` tangent vectors and constants
/// `T[i,L]`, `T[i,R]` for `i < gauge`.
pub fn random_instance(rng: &mut impl Rng, n: usize, vectors: usize, gauge: usize) -> Instance {
    let point = loop {
        let m = random_matrix(rng, n);
        if m.inverse().is_some() {
            break m;
        }
    };
    let vectors = (0..vectors).map(|_| random_matrix(rng, n)).collect();
    let mut bindings = ConstBindings::new();
    for i in 0..gauge {
        bindings.insert(ConstSym::left(i), random_matrix(rng, n));
        bindings.insert(ConstSym::right(i), random_matrix(rng, n));
    }
    Instance { point, vectors, bindings }
}

/// Unnormalized expression of one form degree: up to `max_terms` words of
/// at most `max_len` letters, each with exactly `degree` factors `dg`.
pub fn random_expression(
    rng: &mut impl Rng,
    kind: Kind,
    degree: usize,
    max_terms: usize,
    max_len: usize,
    gauge: usize,
) -> FormExpression {
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let extra = rng.gen_range(0..=max_len.saturating_sub(degree));
        let mut w: Vec<Letter> = (0..extra)
            .map(|_| match rng.gen_range(0..3 + usize::from(gauge > 0)) {
                0 | 1 if rng.gen_bool(0.5) => Letter::G,
                0 | 1 => Letter::GInv,
                2 => Letter::GInv,
                _ => {
                    let i = rng.gen_range(0..gauge);
                    Letter::Const(if rng.gen_bool(0.5) { ConstSym::left(i) } else { ConstSym::right(i) })
                }
            })
            .collect();
        for _ in 0..degree {
            let at = rng.gen_range(0..=w.len());
            w.insert(at, Letter::DG);
        }
        let c = loop {
            let c = random_rational(rng);
            if !c.is_zero() {
                break c;
            }
        };
        terms.push((c, rng.gen_range(-1..=0), w));
    }
    FormExpression::raw(kind, terms)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub instances: usize,
    pub comparisons: usize,
    pub failures: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Pairs whose difference has normal form zero, compared pointwise at
/// `instances` random sites. Random unnormalized expressions are compared
/// with their own normal forms as well.
pub fn agreement_check(instances: usize, seed: u64) -> Result<OracleReport, WzwError> {
    let omega = wzw_form();
    let zero = FormExpression::zero(Kind::Trace);
    let mut pairs: Vec<(String, FormExpression, FormExpression)> = vec![
        ("ι_a ω = d λ_a".into(), omega.contract(0), lambda(0).differential()),
        ("ℒ_b λ_a = λ_[X_b,X_a]".into(), lambda(0).lie_derivative(1), lambda_bracket(0, 1)),
        ("d ω = 0".into(), omega.differential(), zero.clone()),
        ("ℒ_a ω = 0".into(), omega.lie_derivative(0), zero),
        ("ι_a λ_b + ι_b λ_a = (1/2π) Tr(..)".into(), quadratic_residual(0, 1), quadratic_constant(0, 1)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OracleReport { instances, comparisons: 0, failures: Vec::new() };
    for i in 0..instances {
        let n = 2 + i % 2;
        let site = random_instance(&mut rng, n, 4, 2);
        pairs.truncate(5);
        for kind in [Kind::Trace, Kind::Matrix] {
            let degree = rng.gen_range(0..=3);
            let x = random_expression(&mut rng, kind, degree, 4, 6, 2);
            let nf = x.normalize();
            pairs.push((format!("random {kind:?} #{i}"), x, nf));
        }
        for (name, lhs, rhs) in &pairs {
            if !(lhs - rhs).is_zero() {
                report.failures.push(format!("{name}: difference does not normalize to zero"));
                continue;
            }
            let k = lhs.degree().or(rhs.degree()).unwrap_or(0);
            let vs = &site.vectors[..k];
            let a = evaluate(lhs, &site.point, vs, &site.bindings)?;
            let b = evaluate(rhs, &site.point, vs, &site.bindings)?;
            report.comparisons += 1;
            if !same_value(&a, &b) {
                report.failures.push(format!("{name}: instance {i} disagrees"));
            }
        }
    }
    Ok(report)
}

/// Equality of π-expansions, treating absent exponents as zero.
fn same_value(a: &super::eval::Evaluation, b: &super::eval::Evaluation) -> bool {
    use super::eval::Evaluation::*;
    match (a, b) {
        (Scalar(x), Scalar(y)) => x
            .keys()
            .chain(y.keys())
            .all(|e| x.get(e).cloned().unwrap_or_else(ExactScalar::zero) == y.get(e).cloned().unwrap_or_else(ExactScalar::zero)),
        (Matrix(x), Matrix(y)) => x.keys().chain(y.keys()).all(|e| match (x.get(e), y.get(e)) {
            (Some(p), Some(q)) => p == q,
            (Some(p), None) | (None, Some(p)) => p.is_zero(),
            (None, None) => true,
        }),
        (Scalar(x), Matrix(y)) | (Matrix(y), Scalar(x)) => {
            x.values().all(Zero::is_zero) && y.values().all(ExactMatrix::is_zero)
        }
    }
}
