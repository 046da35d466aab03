use std::path::Path;

use eqext::anomaly::{EmbeddingFile, GaugeEmbedding};
use eqext::exact::ExactScalar;
use eqext::liealg::DEFAULT_SYMMETRIC_CEILING;
use eqext::relcoh::{e1_page_series, e1_page_series_computed, invariant_polynomial_series};
use eqext::wzw::{evaluate, quadratic_residual, ConstBindings, Evaluation};
use eqext::{ExactMatrix, Family, MatrixLieAlgebra, PoincareSeries};
use num_traits::Zero;

fn fixtures() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"))
}

fn load(name: &str) -> GaugeEmbedding {
    let text = std::fs::read_to_string(fixtures().join(name)).unwrap();
    let file: EmbeddingFile = serde_json::from_str(&text).unwrap();
    file.build(Some(fixtures())).unwrap()
}

/// The engine's `ι_a λ_b + ι_b λ_a`, evaluated with the embedding's
/// matrices, is the constant `Q_ab / 2π`.
fn assert_residual_matches_anomaly(emb: &GaugeEmbedding) {
    let q = emb.anomaly_form().q;
    let bindings = ConstBindings::from_embedding(emb);
    let point = ExactMatrix::identity(emb.target_size());
    let half = ExactScalar::from_frac(1, 2);
    for a in 0..emb.domain().dim() {
        for b in a..emb.domain().dim() {
            let value = match evaluate(&quadratic_residual(a, b), &point, &[], &bindings).unwrap() {
                Evaluation::Scalar(m) => m,
                Evaluation::Matrix(_) => panic!("trace expression evaluated to a matrix"),
            };
            let expected = &q[(a, b)] * &half;
            assert_eq!(value.get(&-1).cloned().unwrap_or_else(ExactScalar::zero), expected, "Q[{a},{b}]");
            assert!(value.iter().all(|(e, v)| *e == -1 || v.is_zero()));
        }
    }
}

#[test]
fn anomaly_form_equals_symbolic_residual_on_fixtures() {
    for name in ["adjoint_sl3.json", "left_sl3.json", "left_sl2.json", "block_sl2_in_sl4.json"] {
        assert_residual_matches_anomaly(&load(name));
    }
}

#[test]
fn residual_agrees_at_a_generic_point() {
    // constant in g: evaluation at a non-identity point gives the same value
    let emb = load("left_sl3.json");
    let bindings = ConstBindings::from_embedding(&emb);
    let g = ExactMatrix::from_int_rows(&[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]);
    let at = |p: &ExactMatrix| evaluate(&quadratic_residual(0, 7), p, &[], &bindings).unwrap();
    assert_eq!(at(&g), at(&ExactMatrix::identity(3)));
}

#[test]
fn gl1_invariants_are_a_polynomial_ring_on_a_degree_two_class() {
    let gl1 = MatrixLieAlgebra::classical(Family::Gl, 1).unwrap();
    let s = invariant_polynomial_series(&gl1, 20, DEFAULT_SYMMETRIC_CEILING).unwrap();
    assert_eq!(s, PoincareSeries::polynomial(2, 20));
}

#[test]
fn computed_e1_page_matches_closed_form_for_sl3() {
    let computed = e1_page_series_computed(3, 12, DEFAULT_SYMMETRIC_CEILING).unwrap();
    assert_eq!(computed, e1_page_series(3, 12).unwrap());
}
