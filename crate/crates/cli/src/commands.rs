use std::path::Path;

use eqext::anomaly::{ad_invariance_violation, EmbeddingFile};
use eqext::exact::ExactMatrix;
use eqext::getzler::{run_checks, GetzlerConfig, GetzlerReport};
use eqext::liealg::{invariant_polynomial_dimension, invariant_symmetric_forms, AlgebraFile, Family};
use eqext::relcoh::{
    cartan_complement, closed_form_applies, e1_page_series, e1_page_series_computed, e_infinity_series,
    relative_ce_cohomology, series_graded_algebra, target_series, transgression_pairs, PoincareSeries,
};
use eqext::wzw::{agreement_check, identity_suite};
use eqext::MatrixLieAlgebra;
use serde_json::{json, Value};

use crate::report::{Outcome, RunReport, Status};
use crate::CliError;

fn matrix_strings(m: &ExactMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(|x| json!(x.to_string())).collect())).collect())
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// A classical name such as `sl3`, or a path to an algebra file.
pub fn load_algebra(spec: &str) -> Result<MatrixLieAlgebra, CliError> {
    if spec.ends_with(".json") {
        let text = std::fs::read_to_string(spec).map_err(|e| CliError::Invalid(format!("{spec}: {e}")))?;
        let de = &mut serde_json::Deserializer::from_str(&text);
        let file: AlgebraFile = serde_path_to_error::deserialize(de).map_err(|e| CliError::Invalid(format!("{spec}: {e}")))?;
        return file.build().map_err(|e| CliError::Invalid(format!("{spec}: {e}")));
    }
    MatrixLieAlgebra::from_spec(spec).map_err(|e| CliError::Invalid(e.to_string()))
}

pub fn cmd_anomaly(path: &Path) -> Result<Outcome, CliError> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|e| CliError::Invalid(format!("{shown}: {e}")))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| CliError::Invalid(format!("{shown}: {e}")))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    let file: EmbeddingFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        CliError::Invalid(format!("{shown}: field `{}` (line {}, column {}): {inner}", e.path(), inner.line(), inner.column()))
    })?;
    let emb = file.build(path.parent()).map_err(|e| CliError::Invalid(format!("{shown}: {e}")))?;
    let verdict = emb.verdict();
    let report = &verdict.report;
    let domain = emb.domain();
    let ad_invariant = ad_invariance_violation(domain, &report.q).is_none();
    let mut results = json!({
        "domain": domain.name(),
        "domain_dim": domain.dim(),
        "target_size": emb.target_size(),
        "Q_raw": matrix_strings(&report.q),
        "normalization": report.normalization.to_string(),
        "Q_coefficients": matrix_strings(&report.normalized_q()),
        "anomaly_free": report.anomaly_free,
        "ad_invariant": ad_invariant,
        "theorem_applies": verdict.theorem_applies,
        "summary": verdict.summary,
    });
    if verdict.theorem_applies {
        results["equivalence"] = json!(
            "for sl(n,R), Q = 0 is equivalent to the existence of a closed lift in the Cartan model"
        );
    }
    let mut lines = vec![
        format!("domain: {} (dim {}), target {}x{}", domain.name(), domain.dim(), emb.target_size(), emb.target_size()),
        format!("Q = {} · π^{} · {}", report.normalization.coefficient, report.normalization.pi_power, report.q),
        format!("ad-invariant: {ad_invariant}"),
        verdict.summary.clone(),
    ];
    if verdict.theorem_applies {
        lines.push("for sl(n,R), Q = 0 is equivalent to the existence of a closed lift".to_string());
    }
    let status = if verdict.anomaly_free { Status::Pass } else { Status::Fail };
    Ok(Outcome { report: RunReport::new("anomaly", &bytes, results, status, verdict.warnings.clone()), lines })
}

/// Symbolic suite plus, when `instances > 0`, the pointwise oracle on
/// seeded random sites.
pub fn cmd_wzw_verify(instances: usize, seed: u64) -> Result<Outcome, CliError> {
    let suite = identity_suite();
    let mut results = serde_json::to_value(&suite).expect("suite serializes");
    let mut lines: Vec<String> = suite
        .identities
        .iter()
        .map(|c| format!("{:<48} {}", c.name, if c.vanishes { "0".to_string() } else { c.residual.clone() }))
        .collect();
    for c in &suite.convention_residuals {
        lines.push(format!("{:<48} {}", c.name, c.residual));
    }
    for (what, value) in &suite.contractions {
        lines.push(format!("{what} = {value}"));
    }
    let mut ok = suite.all_vanish();
    if instances > 0 {
        let oracle = agreement_check(instances, seed).map_err(|e| CliError::Invalid(e.to_string()))?;
        lines.push(format!(
            "pointwise oracle: {} instances, {} comparisons, {} failures",
            oracle.instances,
            oracle.comparisons,
            oracle.failures.len()
        ));
        ok &= oracle.passed();
        results["oracle"] = serde_json::to_value(&oracle).expect("oracle report serializes");
        results["oracle"]["seed"] = json!(seed);
    }
    let status = if ok { Status::Pass } else { Status::Fail };
    let inputs = format!("wzw-verify {instances} {seed}");
    Ok(Outcome { report: RunReport::new("wzw-verify", inputs.as_bytes(), results, status, suite.warnings), lines })
}

fn sl_so_rank(g: &MatrixLieAlgebra, k: &MatrixLieAlgebra) -> Option<usize> {
    let n = g.matrix_size();
    let sl = MatrixLieAlgebra::classical(Family::Sl, n).ok()?;
    let so = MatrixLieAlgebra::classical(Family::So, n).ok()?;
    (*g == sl && *k == so).then_some(n)
}

/// `g/k`, with `k = 0` for the plain complex.
pub fn cmd_relcoh(pair: &str, ceiling: usize) -> Result<Outcome, CliError> {
    let (gs, ks) = pair
        .split_once('/')
        .ok_or_else(|| CliError::Invalid(format!("pair {pair:?} is not of the form g/k")))?;
    let g = load_algebra(gs)?;
    let k = if ks.trim() == "0" { MatrixLieAlgebra::zero(g.matrix_size()) } else { load_algebra(ks)? };
    let rp = cartan_complement(&g, &k).map_err(|e| CliError::Invalid(e.to_string()))?;
    let coh = relative_ce_cohomology(&rp, ceiling).map_err(|e| CliError::Invalid(e.to_string()))?;
    let betti = &coh.betti;
    let duality = betti.iter().eq(betti.iter().rev());
    let mut warnings = Vec::new();
    let mut results = json!({
        "g": g.name(),
        "k": k.name(),
        "p_dim": rp.p_dim(),
        "betti": betti,
        "cochain_dims": coh.cochain_dims,
        "symmetric": coh.symmetric,
        "differential_zero": coh.differential_zero,
        "poincare_duality": duality,
    });
    let mut lines = vec![
        format!("pair: {} / {}, dim p = {}", g.name(), k.name(), rp.p_dim()),
        format!("betti: {}", join(betti)),
    ];
    if let Some(n) = sl_so_rank(&g, &k).filter(|&n| n > 2) {
        let odd: Vec<usize> = transgression_pairs(n).iter().map(|p| p.0).collect();
        let closed = series_graded_algebra(&odd, &[], rp.p_dim()).map_err(|e| CliError::Invalid(e.to_string()))?;
        let agrees = closed.coefficients().iter().zip(betti).all(|(&c, &b)| c == b as i64);
        results["closed_form"] = json!(closed.coefficients());
        results["closed_form_agrees"] = json!(agrees);
        lines.push(format!("closed form: {}", join(closed.coefficients())));
        if !agrees {
            warnings.push(format!(
                "sl({n})/so({n}): computed Betti numbers differ from the exterior algebra on h_3..h_<n>; \
                 the closed form is only claimed for odd n"
            ));
        }
    }
    if coh.symmetric && !duality {
        warnings.push("symmetric pair without Poincaré duality".to_string());
    }
    let status = if warnings.is_empty() { Status::Pass } else { Status::Warn };
    let inputs = format!("relcoh {gs}/{ks} {ceiling}");
    Ok(Outcome { report: RunReport::new("relcoh", inputs.as_bytes(), results, status, warnings), lines })
}

pub fn cmd_invariants(algebra: &str, max_degree: usize, ceiling: usize) -> Result<Outcome, CliError> {
    let alg = load_algebra(algebra)?;
    let dims = (0..=max_degree)
        .map(|d| invariant_polynomial_dimension(&alg, d, ceiling))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let forms = invariant_symmetric_forms(&alg).len();
    let results = json!({
        "algebra": alg.name(),
        "dim": alg.dim(),
        "invariant_polynomial_dims": dims,
        "invariant_symmetric_forms": forms,
    });
    let lines = vec![
        format!("algebra: {} (dim {})", alg.name(), alg.dim()),
        format!("dim (S^d g*)^g, d = 0..{max_degree}: {}", join(&dims)),
        format!("invariant symmetric bilinear forms: {forms}"),
    ];
    let inputs = format!("invariants {algebra} {max_degree} {ceiling}");
    Ok(Outcome { report: RunReport::new("invariants", inputs.as_bytes(), results, Status::Pass, vec![]), lines })
}

fn series_value(s: &PoincareSeries) -> Value {
    json!({ "coefficients": s.coefficients(), "display": s.to_string() })
}

pub fn cmd_series(n: usize, truncate: usize, computed: bool, ceiling: usize) -> Result<Outcome, CliError> {
    let err = |e: eqext::relcoh::RelcohError| CliError::Invalid(e.to_string());
    let e1 = e1_page_series(n, truncate).map_err(err)?;
    let einf = e_infinity_series(n, truncate).map_err(err)?;
    let target = target_series(n, truncate).map_err(err)?;
    let matches = einf == target;
    let mut warnings = Vec::new();
    if !closed_form_applies(n) {
        warnings.push(format!(
            "n = {n}: the E1 closed form is only claimed for odd n ≥ 3; for even n an Euler-class generator is not modelled"
        ));
    }
    let mut results = json!({
        "n": n,
        "truncation": truncate,
        "transgression_pairs": transgression_pairs(n),
        "e1": series_value(&e1),
        "e_infinity": series_value(&einf),
        "target": series_value(&target),
        "match": matches,
    });
    let mut lines = vec![
        format!("E1:     {e1}"),
        format!("E_inf:  {einf}"),
        format!("target: {target}"),
        format!("match: {matches}"),
    ];
    if computed {
        let c = e1_page_series_computed(n, truncate, ceiling).map_err(err)?;
        let agrees = c == e1;
        results["e1_computed"] = series_value(&c);
        results["e1_computed_agrees"] = json!(agrees);
        lines.push(format!("E1 computed: {c}"));
        if !agrees {
            warnings.push(format!("n = {n}: E1 from computed Betti numbers differs from the closed form"));
        }
    }
    let status = match (matches, warnings.is_empty()) {
        (false, _) => Status::Fail,
        (true, true) => Status::Pass,
        (true, false) => Status::Warn,
    };
    let inputs = format!("series {n} {truncate} {computed} {ceiling}");
    Ok(Outcome { report: RunReport::new("series", inputs.as_bytes(), results, status, warnings), lines })
}

fn float(x: f64) -> Value {
    json!(format!("{x:e}"))
}

fn getzler_results(r: &GetzlerReport) -> Value {
    let t = &r.tolerances;
    let row = |value: f64, tol: f64, ok: bool| json!({ "value": float(value), "tolerance": float(tol), "ok": ok });
    json!({
        "config": {
            "group": r.config.group,
            "ambient": r.config.ambient,
            "max_arity": r.config.max_arity,
            "samples": r.config.samples,
            "step": float(r.config.step),
            "seed": r.config.seed,
            "scale": float(r.config.scale),
            "max_poly_degree": r.config.max_poly_degree,
            "max_x_degree": r.config.max_x_degree,
        },
        "d_G_squared": row(r.square_residual, t.square, r.square_ok()),
        "d_G_squared_half_step": float(r.square_residual_half_step),
        "richardson_ratio": { "value": float(r.richardson_ratio), "minimum": float(t.richardson_ratio), "ok": r.richardson_ok() },
        "associativity": row(r.associativity_residual, t.associativity, r.associativity_ok()),
        "leibniz": row(r.leibniz_residual, t.leibniz, r.leibniz_ok()),
        "normalization": row(r.normalization_residual, t.normalization, r.normalization_ok()),
        "cartan_inclusion": r.cartan_inclusion,
    })
}

pub fn cmd_getzler_check(config: &GetzlerConfig) -> Result<Outcome, CliError> {
    let r = run_checks(config).map_err(|e| CliError::Invalid(e.to_string()))?;
    let t = &r.tolerances;
    let mut lines = vec![
        format!("group {} on R^{}, arities 0..={}, {} samples, step {:e}", config.group, config.ambient, config.max_arity, config.samples, config.step),
        format!("d_G^2 residual        {:.3e}  (tolerance {:e})", r.square_residual, t.square),
        format!("  at half step        {:.3e}  ratio {:.3} (minimum {})", r.square_residual_half_step, r.richardson_ratio, t.richardson_ratio),
        format!("cup associativity     {:.3e}  (tolerance {:e})", r.associativity_residual, t.associativity),
        format!("Leibniz               {:.3e}  (tolerance {:e})", r.leibniz_residual, t.leibniz),
        format!("vanish at identity    {:.3e}  (tolerance {:e})", r.normalization_residual, t.normalization),
    ];
    match &r.cartan_inclusion {
        Some(c) => lines.push(format!(
            "Cartan inclusion      dbar = 0: {}, d_G = d + iota: {} ({} exact samples)",
            c.dbar_vanishes, c.matches_cartan, c.samples
        )),
        None => lines.push("Cartan inclusion      skipped (no unimodular invariant)".to_string()),
    }
    let status = if r.passed() { Status::Pass } else { Status::Fail };
    let inputs = serde_json::to_vec(config).expect("config serializes");
    Ok(Outcome { report: RunReport::new("getzler-check", &inputs, getzler_results(&r), status, vec![]), lines })
}
