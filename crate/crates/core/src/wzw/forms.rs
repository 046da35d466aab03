use crate::exact::ExactScalar;

use super::expr::FormExpression;
use super::word::{ConstSym, Letter};
use super::WzwError;

/// `µ = g⁻¹ dg`.
pub fn mu() -> FormExpression {
    FormExpression::word(&[Letter::GInv, Letter::DG])
}

/// `θ = dg g⁻¹`.
pub fn theta() -> FormExpression {
    FormExpression::word(&[Letter::DG, Letter::GInv])
}

/// `ω = (1/12π) Tr(µ³)`.
pub fn wzw_form() -> FormExpression {
    mu().pow(3)
        .and_then(|m| m.trace())
        .expect("matrix power")
        .scale(&ExactScalar::from_frac(1, 12), -1)
}

/// `(1/4π) Tr(C_L θ + C_R µ)` for degree-0 matrix expressions `C_L, C_R`.
pub fn lambda_with(cl: &FormExpression, cr: &FormExpression) -> Result<FormExpression, WzwError> {
    let body = &cl.mul(&theta())? + &cr.mul(&mu())?;
    Ok(body.trace()?.scale(&ExactScalar::from_frac(1, 4), -1))
}

/// `λ_a = (1/4π) Tr(T_{a,L} θ + T_{a,R} µ)`.
pub fn lambda(a: usize) -> FormExpression {
    lambda_with(&FormExpression::constant(ConstSym::left(a)), &FormExpression::constant(ConstSym::right(a)))
        .expect("matrix expressions")
}

/// `T_{x,s} T_{y,s} − T_{y,s} T_{x,s}` on both sides.
fn commutator_constants(x: usize, y: usize) -> (FormExpression, FormExpression) {
    let side = |mk: fn(usize) -> ConstSym| {
        let cx = FormExpression::constant(mk(x));
        let cy = FormExpression::constant(mk(y));
        &cx.mul(&cy).expect("matrix") - &cy.mul(&cx).expect("matrix")
    };
    (side(ConstSym::left), side(ConstSym::right))
}

/// `λ` evaluated on the matrix commutator `[T_x, T_y] = T_x T_y − T_y T_x`.
pub fn lambda_bracket(x: usize, y: usize) -> FormExpression {
    let (l, r) = commutator_constants(x, y);
    lambda_with(&l, &r).expect("matrix expressions")
}

/// `ι_a λ_b + ι_b λ_a`.
pub fn quadratic_residual(a: usize, b: usize) -> FormExpression {
    &lambda(b).contract(a) + &lambda(a).contract(b)
}

/// `(1/2π) [Tr(T_{a,L} T_{b,L}) − Tr(T_{a,R} T_{b,R})]`.
pub fn quadratic_constant(a: usize, b: usize) -> FormExpression {
    let tr = |x: ConstSym, y: ConstSym| {
        FormExpression::word(&[Letter::Const(x), Letter::Const(y)]).trace().expect("matrix")
    };
    let diff = &tr(ConstSym::left(a), ConstSym::left(b)) - &tr(ConstSym::right(a), ConstSym::right(b));
    diff.scale(&ExactScalar::from_frac(1, 2), -1)
}
