//! End-to-end acceptance checks, run without the test harness so that the
//! `PASS`/`FAIL` line of every check is always printed. Exits nonzero if any
//! check fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use eqext::anomaly::{EmbeddingFile, GaugeEmbedding};
use eqext::getzler::{cartan_inclusion, killing_invariant, run_checks, ActionKind, GetzlerConfig, GroupAction};
use eqext::liealg::{invariant_polynomial_dimension, invariant_symmetric_forms, trace_form, DEFAULT_SYMMETRIC_CEILING};
use eqext::relcoh::{cartan_complement, e_infinity_series, relative_ce_cohomology, target_series, DEFAULT_WEDGE_CEILING};
use eqext::wzw::{agreement_check, identity_suite, quadratic_constant, quadratic_residual, random_expression, Letter};
use eqext::{Family, MatrixLieAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Check {
    label: &'static str,
    ok: bool,
    detail: String,
    elapsed: Duration,
}

fn run(label: &'static str, limit: Duration, f: impl FnOnce() -> (bool, String)) -> Check {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let detail = if in_time { detail } else { format!("{detail}; exceeded {limit:?}") };
    Check { label, ok: ok && in_time, detail, elapsed }
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn embedding(name: &str) -> GaugeEmbedding {
    let text = std::fs::read_to_string(fixtures().join(name)).unwrap();
    let file: EmbeddingFile = serde_json::from_str(&text).unwrap();
    file.build(Some(&fixtures())).unwrap()
}

fn alg(fam: Family, n: usize) -> MatrixLieAlgebra {
    MatrixLieAlgebra::classical(fam, n).unwrap()
}

fn wzw_identities() -> (bool, String) {
    let suite = identity_suite();
    let g_free = quadratic_residual(0, 1).filter_terms(|w| w.iter().any(|l| !matches!(l, Letter::Const(_)))).is_zero();
    let constant = (&quadratic_residual(0, 1) - &quadratic_constant(0, 1)).is_zero();
    let ok = suite.all_vanish() && g_free && constant;
    (ok, format!("{} identities vanish, {} warnings", suite.identities.len(), suite.warnings.len()))
}

fn anomaly_verdicts() -> (bool, String) {
    let adjoint = embedding("adjoint_sl3.json").anomaly_form();
    let left = embedding("left_sl3.json");
    let left_q = left.anomaly_form();
    let block = embedding("block_sl2_in_sl4.json").anomaly_form();
    let trace = trace_form(left.domain());
    let half_over_pi = left_q.normalization.coefficient == eqext::ExactScalar::from_frac(1, 2) && left_q.normalization.pi_power == -1;
    let ok = adjoint.q.is_zero() && left_q.q == trace && !trace.is_zero() && half_over_pi && block.q.is_zero();
    (ok, format!("adjoint Q=0: {}, left-only Q=(1/2π)·trace form: {}, block Q=0: {}", adjoint.q.is_zero(), left_q.q == trace, block.q.is_zero()))
}

fn oracle_agreement() -> (bool, String) {
    let r = agreement_check(100, 2024).unwrap();
    (r.passed() && r.instances == 100, format!("{} instances, {} comparisons, {} failures", r.instances, r.comparisons, r.failures.len()))
}

fn getzler_operators() -> (bool, String) {
    let r = run_checks(&GetzlerConfig::default()).unwrap();
    let ok = r.square_ok() && r.richardson_ok() && r.associativity_ok() && r.leibniz_ok();
    (
        ok,
        format!(
            "d_G² {:.3e}, halved {:.3e} (ratio {:.2}), assoc {:.1e}, Leibniz {:.1e}",
            r.square_residual, r.square_residual_half_step, r.richardson_ratio, r.associativity_residual, r.leibniz_residual
        ),
    )
}

fn cartan() -> (bool, String) {
    let mut all = true;
    for n in [2, 3] {
        let g = alg(Family::Sl, n);
        let action = GroupAction::new(&g, ActionKind::Defining).unwrap();
        let f = killing_invariant(&g, &action);
        let r = cartan_inclusion(action, &f, 20, 7).unwrap();
        all &= r.holds() && r.nontrivial;
    }
    (all, "sl2, sl3 Killing quadratic: d̄ = 0 and d_G = d + ι exactly".into())
}

fn relative_cohomology() -> (bool, String) {
    let betti = |g: MatrixLieAlgebra, k: MatrixLieAlgebra| {
        relative_ce_cohomology(&cartan_complement(&g, &k).unwrap(), DEFAULT_WEDGE_CEILING).unwrap().betti
    };
    let b2 = betti(alg(Family::Sl, 2), alg(Family::So, 2));
    let b3 = betti(alg(Family::Sl, 3), alg(Family::So, 3));
    let su = betti(alg(Family::Su, 2), MatrixLieAlgebra::zero(2));
    let ok = b2 == [1, 0, 1] && b3 == [1, 0, 0, 0, 0, 1] && su == [1, 0, 0, 1];
    (ok, format!("sl2/so2 {b2:?}, sl3/so3 {b3:?}, su2 {su:?}"))
}

fn invariant_polynomials() -> (bool, String) {
    let dims = |g: &MatrixLieAlgebra| -> Vec<usize> {
        (2..=4).map(|d| invariant_polynomial_dimension(g, d, DEFAULT_SYMMETRIC_CEILING).unwrap()).collect()
    };
    let (s2, s3) = (dims(&alg(Family::Sl, 2)), dims(&alg(Family::Sl, 3)));
    (s2 == [1, 0, 1] && s3 == [1, 1, 1], format!("sl2 {s2:?}, sl3 {s3:?}"))
}

fn quadratic_forms() -> (bool, String) {
    let counts: Vec<usize> = (2..=4).map(|n| invariant_symmetric_forms(&alg(Family::Sl, n)).len()).collect();
    (counts == [1, 1, 1], format!("sl2..sl4: {counts:?}"))
}

fn poincare_series() -> (bool, String) {
    let ok = [3, 5, 7].iter().all(|&n| e_infinity_series(n, 40).unwrap() == target_series(n, 40).unwrap());
    (ok, "n = 3, 5, 7 through t^40".into())
}

fn structured(args: &[&str]) -> (Vec<u8>, Option<i32>) {
    let out = Command::new(env!("CARGO_BIN_EXE_eqext")).args(["--output", "structured"]).args(args).output().unwrap();
    (out.stdout, out.status.code())
}

fn properties() -> (bool, String) {
    let mut jacobi = true;
    for n in 2..=4 {
        for fam in [Family::Sl, Family::So, Family::Su, Family::Gl] {
            jacobi &= alg(fam, n).structure_constants().jacobi_violation().is_none();
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut engine = true;
    let expressions = 60;
    for i in 0..expressions {
        let kind = if i % 2 == 0 { eqext::wzw::Kind::Trace } else { eqext::wzw::Kind::Matrix };
        let x = random_expression(&mut rng, kind, i % 4, 4, 6, 2);
        let nf = x.normalize();
        engine &= x.differential().differential().is_zero() && nf.normalize() == nf;
    }
    let anomaly = fixtures().join("left_sl3.json");
    let anomaly = anomaly.to_str().unwrap();
    let commands: [&[&str]; 6] = [
        &["anomaly", anomaly],
        &["wzw-verify"],
        &["relcoh", "--pair", "sl3/so3"],
        &["invariants", "--algebra", "sl3"],
        &["series", "--n", "5"],
        &["getzler-check", "--samples", "20", "--seed", "5"],
    ];
    let deterministic = commands.iter().all(|args| {
        let (a, b) = (structured(args), structured(args));
        !a.0.is_empty() && a == b
    });
    (
        jacobi && engine && deterministic,
        format!("Jacobi {jacobi}, d∘d and idempotence on {expressions} expressions {engine}, byte-identical reports {deterministic}"),
    )
}

fn main() {
    let s = Duration::from_secs;
    let checks = [
        run("wzw identity suite", s(10), wzw_identities),
        run("anomaly verdicts on fixtures", s(1), anomaly_verdicts),
        run("pointwise oracle agreement", s(120), oracle_agreement),
        run("getzler operator residuals", s(120), getzler_operators),
        run("cartan inclusion", s(60), cartan),
        run("relative cohomology", s(60), relative_cohomology),
        run("invariant polynomials", s(60), invariant_polynomials),
        run("invariant quadratic forms", s(60), quadratic_forms),
        run("poincare series", s(10), poincare_series),
        run("property suites and determinism", s(300), properties),
    ];
    for c in &checks {
        println!("{} {:<32} {:>8.2?}  {}", if c.ok { "PASS" } else { "FAIL" }, c.label, c.elapsed, c.detail);
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.ok).map(|c| c.label).collect();
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
