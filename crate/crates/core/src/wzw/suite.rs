use serde::Serialize;

use super::expr::FormExpression;
use super::forms::{lambda, lambda_bracket, mu, quadratic_constant, quadratic_residual, theta, wzw_form};
use super::word::Letter;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub residual: String,
    pub vanishes: bool,
}

impl IdentityCheck {
    fn new(name: &str, residual: &FormExpression) -> Self {
        IdentityCheck { name: name.to_string(), residual: residual.to_string(), vanishes: residual.is_zero() }
    }
}

/// `d(x^{2p+1}) = sign · x^{2p+2}` as derived by the engine.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerSign {
    pub form: String,
    pub p: usize,
    /// `+1`, `-1`, or `0` when neither sign matches.
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub identities: Vec<IdentityCheck>,
    /// Residuals under alternative readings; nonzero by design.
    pub convention_residuals: Vec<IdentityCheck>,
    pub power_signs: Vec<PowerSign>,
    pub contractions: Vec<(String, String)>,
    pub warnings: Vec<String>,
}

impl SuiteReport {
    pub fn all_vanish(&self) -> bool {
        self.identities.iter().all(|c| c.vanishes)
    }
}

fn power_sign(x: &FormExpression, p: usize) -> i8 {
    let odd = x.pow(2 * p + 1).expect("matrix power").differential();
    let even = x.pow(2 * p + 2).expect("matrix power");
    if odd == even {
        1
    } else if odd == -&even {
        -1
    } else {
        0
    }
}

/// Runs every identity for the formal gauge indices `a = 0`, `b = 1`.
pub fn identity_suite() -> SuiteReport {
    let (a, b) = (0, 1);
    let omega = wzw_form();
    let lam_a = lambda(a);
    let lie_lam = lam_a.lie_derivative(b);
    let q = quadratic_residual(a, b);
    let mu3 = mu().pow(3).and_then(|m| m.trace()).expect("matrix power");

    let identities = vec![
        IdentityCheck::new("d ω", &omega.differential()),
        IdentityCheck::new("ι_a ω − d λ_a", &(&omega.contract(a) - &lam_a.differential())),
        IdentityCheck::new("ℒ_b λ_a − λ_[X_b,X_a]", &(&lie_lam - &lambda_bracket(a, b))),
        IdentityCheck::new("ℒ_a ω", &omega.lie_derivative(a)),
        IdentityCheck::new(
            "g-dependent part of ι_a λ_b + ι_b λ_a",
            &q.filter_terms(|w| w.iter().any(|l| !matches!(l, Letter::Const(_)))),
        ),
        IdentityCheck::new("ι_a λ_b + ι_b λ_a − (1/2π) Tr(T_aL T_bL − T_aR T_bR)", &(&q - &quadratic_constant(a, b))),
        IdentityCheck::new("(ι_a ι_b + ι_b ι_a) Tr(µ³)", &(&mu3.contract(b).contract(a) + &mu3.contract(a).contract(b))),
        IdentityCheck::new("ι_a ι_a ω", &omega.contract(a).contract(a)),
        IdentityCheck::new("d d λ_a", &lam_a.differential().differential()),
    ];
    let convention_residuals = vec![IdentityCheck::new(
        "ℒ_b λ_a − λ_{T_b T_a − T_a T_b}",
        &(&lie_lam - &lambda_bracket(b, a)),
    )];
    let mut power_signs = Vec::new();
    for p in 0..3 {
        power_signs.push(PowerSign { form: "g^-1 dg".into(), p, sign: power_sign(&mu(), p) });
        power_signs.push(PowerSign { form: "dg g^-1".into(), p, sign: power_sign(&theta(), p) });
    }
    let contractions = vec![
        ("ι_a(g^-1 dg)".to_string(), mu().contract(a).to_string()),
        ("ι_a(dg g^-1)".to_string(), theta().contract(a).to_string()),
    ];
    let warnings = vec![
        "power identities: d((g^-1 dg)^(2p+1)) = −(g^-1 dg)^(2p+2) and d((dg g^-1)^(2p+1)) = +(dg g^-1)^(2p+2) \
         under d(αβ) = dα·β + (−1)^|α| α·dβ; the opposite signs are not reproduced"
            .to_string(),
        "ι_a(dg g^-1) = T_aL − g T_aR g^-1, not T_aL − g^-1 T_aR g".to_string(),
        "ℒ_b λ_a = λ_[X_b,X_a]; the bracket of fundamental vector fields corresponds to T_a T_b − T_b T_a, \
         so reading λ_[b,a] with the matrix commutator T_b T_a − T_a T_b leaves a residual 2 λ_[a,b]"
            .to_string(),
    ];
    SuiteReport { identities, convention_residuals, power_signs, contractions, warnings }
}
