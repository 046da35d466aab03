//! Pointwise oracles for the symbolic engine, independent of its rewriting:
//! exterior derivatives from dual-number lifts, contractions by direct
//! substitution of the fundamental vector field.

use std::collections::BTreeMap;

use eqext::exact::{ExactMatrix, ExactScalar};
use eqext::wzw::{
    agreement_check, evaluate, lambda, random_expression, random_instance, wzw_form, ConstBindings, ConstSym,
    Evaluation, FormExpression, Instance, Kind,
};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn block(a: &ExactMatrix, b: &ExactMatrix, d: &ExactMatrix) -> ExactMatrix {
    let n = a.rows();
    ExactMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)].clone(),
        (true, false) => b[(i, j - n)].clone(),
        (false, false) => d[(i - n, j - n)].clone(),
        (false, true) => ExactScalar::zero(),
    })
}

fn top_right(m: &ExactMatrix) -> ExactMatrix {
    let n = m.rows() / 2;
    ExactMatrix::from_fn(n, n, |i, j| m[(i, j + n)].clone())
}

/// Matrix-valued π-expansion of `x`, reading a trace expression as the
/// matrix expression whose trace it is.
fn matrix_values(
    x: &FormExpression,
    point: &ExactMatrix,
    vectors: &[ExactMatrix],
    bindings: &ConstBindings,
) -> BTreeMap<i32, ExactMatrix> {
    let m = FormExpression::raw(Kind::Matrix, x.terms().map(|(c, e, w)| (c.clone(), e, w.to_vec())));
    match evaluate(&m, point, vectors, bindings).unwrap() {
        Evaluation::Matrix(v) => v,
        Evaluation::Scalar(v) => {
            assert!(v.values().all(Zero::is_zero));
            BTreeMap::new()
        }
    }
}

/// Directional derivative of `x(v…)` at the instance point along `dir`.
fn derivative(x: &FormExpression, site: &Instance, dir: &ExactMatrix, vectors: &[ExactMatrix]) -> BTreeMap<i32, ExactMatrix> {
    let p = block(&site.point, dir, &site.point);
    let vs: Vec<ExactMatrix> = vectors.iter().map(|v| block(v, &ExactMatrix::zeros(v.rows(), v.rows()), v)).collect();
    let mut lifted = ConstBindings::new();
    for i in 0..4 {
        for c in [ConstSym::left(i), ConstSym::right(i)] {
            if let Some(t) = site.bindings.get(c) {
                lifted.insert(c, block(t, &ExactMatrix::zeros(t.rows(), t.rows()), t));
            }
        }
    }
    matrix_values(x, &p, &vs, &lifted).into_iter().map(|(e, m)| (e, top_right(&m))).collect()
}

fn accumulate(acc: &mut BTreeMap<i32, ExactMatrix>, add: BTreeMap<i32, ExactMatrix>, sign: i64) {
    for (e, m) in add {
        let m = m.scale(&ExactScalar::from_int(sign));
        let entry = acc.entry(e).or_insert_with(|| ExactMatrix::zeros(m.rows(), m.cols()));
        *entry = &*entry + &m;
    }
}

fn same(a: &BTreeMap<i32, ExactMatrix>, b: &BTreeMap<i32, ExactMatrix>, traced: bool) -> bool {
    a.keys().chain(b.keys()).all(|e| {
        let n = a.get(e).or(b.get(e)).map_or(0, ExactMatrix::rows);
        let z = ExactMatrix::zeros(n, n);
        let (x, y) = (a.get(e).unwrap_or(&z), b.get(e).unwrap_or(&z));
        if traced {
            x.trace() == y.trace()
        } else {
            x == y
        }
    })
}

/// `dX(v_0..v_k) = Σ_i (−1)^i D_{v_i} X(v_0..v̂_i..v_k)` for constant fields.
fn check_differential(x: &FormExpression, site: &Instance) -> bool {
    differential_candidate_agrees(x, &x.differential(), site)
}

fn differential_candidate_agrees(x: &FormExpression, dx: &FormExpression, site: &Instance) -> bool {
    let k = x.degree().unwrap_or(0);
    let vs = &site.vectors[..=k];
    let lhs = matrix_values(dx, &site.point, vs, &site.bindings);
    let mut rhs = BTreeMap::new();
    for i in 0..=k {
        let rest: Vec<ExactMatrix> = vs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
        accumulate(&mut rhs, derivative(x, site, &vs[i], &rest), if i % 2 == 0 { 1 } else { -1 });
    }
    same(&lhs, &rhs, x.kind() == Kind::Trace)
}

fn fundamental(site: &Instance, a: usize) -> ExactMatrix {
    let l = site.bindings.get(ConstSym::left(a)).unwrap();
    let r = site.bindings.get(ConstSym::right(a)).unwrap();
    &(l * &site.point) - &(&site.point * r)
}

fn check_contraction(x: &FormExpression, site: &Instance, a: usize) -> bool {
    let k = x.degree().unwrap_or(0);
    if k == 0 {
        return x.contract(a).is_zero();
    }
    let rest = &site.vectors[..k - 1];
    let mut full = vec![fundamental(site, a)];
    full.extend_from_slice(rest);
    let lhs = matrix_values(&x.contract(a), &site.point, rest, &site.bindings);
    let rhs = matrix_values(x, &site.point, &full, &site.bindings);
    same(&lhs, &rhs, x.kind() == Kind::Trace)
}

#[test]
fn differential_matches_dual_number_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..40 {
        let site = random_instance(&mut rng, 2 + i % 2, 5, 2);
        let kind = if i % 2 == 0 { Kind::Matrix } else { Kind::Trace };
        let x = random_expression(&mut rng, kind, i % 4, 3, 5, 2).normalize();
        if x.is_zero() {
            continue;
        }
        assert!(check_differential(&x, &site), "d disagrees on {x}");
    }
}

#[test]
fn differential_of_named_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let site = random_instance(&mut rng, 3, 5, 2);
    assert!(check_differential(&wzw_form(), &site));
    assert!(check_differential(&lambda(1), &site));
}

#[test]
fn oracle_rejects_wrong_sign() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let site = random_instance(&mut rng, 2, 5, 2);
    let x = eqext::wzw::mu().mul(&FormExpression::constant(ConstSym::left(0))).unwrap();
    assert!(!x.differential().is_zero());
    assert!(!differential_candidate_agrees(&x, &-&x.differential(), &site));
}

#[test]
fn contraction_matches_substitution() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for i in 0..40 {
        let site = random_instance(&mut rng, 2 + i % 2, 4, 2);
        let kind = if i % 2 == 0 { Kind::Trace } else { Kind::Matrix };
        let x = random_expression(&mut rng, kind, 1 + i % 3, 3, 5, 2).normalize();
        assert!(check_contraction(&x, &site, i % 2), "ι disagrees on {x}");
    }
}

#[test]
fn lie_derivative_is_cartan_formula_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for i in 0..20 {
        let site = random_instance(&mut rng, 2, 4, 2);
        let x = random_expression(&mut rng, Kind::Trace, 1 + i % 2, 3, 4, 2).normalize();
        let k = match x.degree() {
            Some(k) => k,
            None => continue,
        };
        let lie = x.lie_derivative(0);
        let raw = FormExpression::raw(
            Kind::Trace,
            x.contract(0).differential().terms().chain(x.differential().contract(0).terms()).map(|(c, e, w)| (c.clone(), e, w.to_vec())),
        );
        let vs = &site.vectors[..k];
        assert_eq!(
            evaluate(&lie, &site.point, vs, &site.bindings).unwrap(),
            evaluate(&raw, &site.point, vs, &site.bindings).unwrap()
        );
    }
}

#[test]
fn hundred_seeded_instances_agree() {
    let report = agreement_check(100, 2024).unwrap();
    assert_eq!(report.instances, 100);
    assert!(report.passed(), "{:?}", report.failures);
}
