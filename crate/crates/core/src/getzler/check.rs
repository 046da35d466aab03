use std::sync::Arc;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::liealg::{killing_form, MatrixLieAlgebra};

use super::action::{ActionKind, GroupAction};
use super::cochain::{CochainSum, EquivariantCochain, GetzlerOperators};
use super::field::{Field, SqMat};
use super::polyform::PolyForm;
use super::sampler::{random_cochain, ExactSampler, GroupSampler};
use super::GetzlerError;

/// Largest coefficient of `sum` at one group tuple; each part reads the
/// first `arity` elements of `pool`.
pub fn residual_at(sum: &CochainSum<f64>, pool: &[SqMat<f64>]) -> Result<f64, GetzlerError> {
    let mut worst = 0.0f64;
    for part in sum.parts() {
        let k = part.arity();
        if k > pool.len() {
            return Err(GetzlerError::Arity { expected: k, got: pool.len() });
        }
        worst = worst.max(part.evaluate(&pool[..k])?.max_abs());
    }
    Ok(worst)
}

/// `max |d_G(d_G f)|` over the pool.
pub fn square_residual(
    ops: &GetzlerOperators<f64>,
    f: &EquivariantCochain<f64>,
    pool: &[SqMat<f64>],
) -> Result<f64, GetzlerError> {
    let once = ops.total(f)?;
    residual_at(&ops.total_sum(&once)?, pool)
}

/// `(a ∪ b) ∪ c − a ∪ (b ∪ c)` at the pool.
pub fn associativity_residual(
    ops: &GetzlerOperators<f64>,
    a: &EquivariantCochain<f64>,
    b: &EquivariantCochain<f64>,
    c: &EquivariantCochain<f64>,
    pool: &[SqMat<f64>],
) -> Result<f64, GetzlerError> {
    let left = ops.cup(&ops.cup(a, b)?, c)?;
    let right = ops.cup(a, &ops.cup(b, c)?)?;
    let diff = left.add(&right.scale(-1.0))?;
    residual_at(&CochainSum::single(diff), pool)
}

/// `d_G(a ∪ b) − (d_G a) ∪ b − (−1)^{deg a} a ∪ (d_G b)` at the pool.
pub fn leibniz_residual(
    ops: &GetzlerOperators<f64>,
    a: &EquivariantCochain<f64>,
    b: &EquivariantCochain<f64>,
    pool: &[SqMat<f64>],
) -> Result<f64, GetzlerError> {
    let deg = a.total_degree().ok_or(GetzlerError::Inhomogeneous)?;
    let lhs = ops.total(&ops.cup(a, b)?)?;
    let first = ops.cup_sum(&ops.total(a)?, &CochainSum::single(b.clone()))?;
    let sign = if deg % 2 == 0 { -1.0 } else { 1.0 };
    let second = ops.cup_sum(&CochainSum::single(a.clone()), &ops.total(b)?)?.scale(sign);
    residual_at(&lhs.add(&first.scale(-1.0))?.add(&second)?, pool)
}

/// Largest coefficient of any part evaluated with one slot set to the
/// identity, over every slot.
pub fn normalization_residual(sum: &CochainSum<f64>, pool: &[SqMat<f64>]) -> Result<f64, GetzlerError> {
    let mut worst = 0.0f64;
    for part in sum.parts() {
        let k = part.arity();
        for slot in 0..k {
            let mut args = pool[..k].to_vec();
            args[slot] = SqMat::identity(args[slot].size());
            worst = worst.max(part.evaluate(&args)?.max_abs());
        }
    }
    Ok(worst)
}

/// Cartan differential `d + ι(X)` on a single form.
pub fn cartan_differential<T: Field>(action: &GroupAction<T>, f: &PolyForm<T>) -> PolyForm<T> {
    f.exterior_d().add(&f.contract(&action.fundamental_field()))
}

/// The Killing quadratic `Σ B_ab Ω^a Ω^b`, wedged with the volume form when
/// the action is by unimodular matrices on `ℝ^m`.
pub fn killing_invariant<T: Field>(alg: &MatrixLieAlgebra, action: &GroupAction<T>) -> PolyForm<T> {
    let (d, m) = (action.g_dim(), action.ambient());
    let b = killing_form(alg);
    let mut f = PolyForm::zero(d, m);
    for i in 0..d {
        for j in 0..d {
            let c = T::from_exact(&b[(i, j)]);
            if !c.is_zero() {
                f = f.add(&PolyForm::omega(d, m, i).mul(&PolyForm::omega(d, m, j)).scale(&c));
            }
        }
    }
    if action.kind() == ActionKind::Defining && alg.is_special_linear() {
        f = (0..m).fold(f, |acc, i| acc.mul(&PolyForm::dx(d, m, i)));
    }
    f
}

/// Outcome of the inclusion test for one invariant 0-cochain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CartanInclusion {
    pub samples: usize,
    /// `d̄ f` vanished exactly at every sample.
    pub dbar_vanishes: bool,
    /// The arity-0 part of `d_G f` equals `(d + ι) f` term by term.
    pub matches_cartan: bool,
    /// `f` was nonzero and `(d + ι) f` was nonzero, so the test is not vacuous.
    pub nontrivial: bool,
}

impl CartanInclusion {
    pub fn holds(&self) -> bool {
        self.dbar_vanishes && self.matches_cartan
    }
}

/// Exact inclusion test `d_G ∘ i = i ∘ (d + ι)` for the invariant `f`.
pub fn cartan_inclusion(
    action: GroupAction<BigRational>,
    f: &PolyForm<BigRational>,
    samples: usize,
    seed: u64,
) -> Result<CartanInclusion, GetzlerError> {
    let mut sampler = ExactSampler::new(&action, seed)?;
    let cartan = cartan_differential(&action, f);
    let ops = GetzlerOperators::new(action, BigRational::zero());
    let total = ops.total(&EquivariantCochain::constant(f.clone()))?;
    let matches_cartan = match total.part(0) {
        Some(p) => p.evaluate(&[])? == cartan,
        None => cartan.is_zero(),
    };
    let mut dbar_vanishes = true;
    if let Some(p) = total.part(1) {
        for _ in 0..samples {
            dbar_vanishes &= p.evaluate(&[sampler.sample()])?.is_zero();
        }
    }
    let nontrivial = !f.is_zero() && !cartan.is_zero();
    Ok(CartanInclusion { samples, dbar_vanishes, matches_cartan, nontrivial })
}

/// For abelian `𝔤` acting on a point every `Ω`-polynomial is invariant and
/// `d + ι = 0`; checks that and `d̄ = 0` on `Ω^j`, `j ≤ max_degree`.
pub fn point_cartan_vanishes(alg: &MatrixLieAlgebra, max_degree: usize, samples: usize, seed: u64) -> Result<bool, GetzlerError> {
    let action = GroupAction::<BigRational>::new(alg, ActionKind::Point)?;
    let d = action.g_dim();
    let mut sampler = ExactSampler::new(&action, seed)?;
    let ops = GetzlerOperators::new(action, BigRational::zero());
    for a in 0..d {
        let mut f = PolyForm::constant(d, 0, BigRational::from_i64(1));
        for _ in 0..=max_degree {
            let total = ops.total(&EquivariantCochain::constant(f.clone()))?;
            if let Some(p) = total.part(0) {
                if !p.evaluate(&[])?.is_zero() {
                    return Ok(false);
                }
            }
            if let Some(p) = total.part(1) {
                for _ in 0..samples {
                    if !p.evaluate(&[sampler.sample()])?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            f = f.mul(&PolyForm::omega(d, 0, a));
        }
    }
    Ok(true)
}

/// Options of a full operator check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GetzlerConfig {
    pub group: String,
    pub ambient: usize,
    pub max_arity: usize,
    pub samples: usize,
    pub step: f64,
    pub seed: u64,
    /// Half-width of the coefficient box for sampled exponentials.
    pub scale: f64,
    /// Largest `2|Ω| + |dx|` of random cochains.
    pub max_poly_degree: usize,
    /// Largest `x`-degree of random cochains.
    pub max_x_degree: usize,
}

impl Default for GetzlerConfig {
    fn default() -> Self {
        GetzlerConfig {
            group: "sl2".into(),
            ambient: 2,
            max_arity: 2,
            samples: 100,
            step: 1e-3,
            seed: 20_240_601,
            scale: 0.5,
            max_poly_degree: 2,
            max_x_degree: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub square: f64,
    pub richardson_ratio: f64,
    pub associativity: f64,
    pub leibniz: f64,
    pub normalization: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { square: 1e-5, richardson_ratio: 3.0, associativity: 1e-8, leibniz: 1e-4, normalization: 1e-12 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GetzlerReport {
    pub config: GetzlerConfig,
    pub tolerances: Tolerances,
    pub square_residual: f64,
    pub square_residual_half_step: f64,
    /// `square_residual / square_residual_half_step`.
    pub richardson_ratio: f64,
    pub associativity_residual: f64,
    pub leibniz_residual: f64,
    pub normalization_residual: f64,
    pub cartan_inclusion: Option<CartanInclusion>,
    pub seconds: f64,
}

impl GetzlerReport {
    pub fn square_ok(&self) -> bool {
        self.square_residual <= self.tolerances.square
    }

    pub fn richardson_ok(&self) -> bool {
        self.richardson_ratio >= self.tolerances.richardson_ratio
    }

    pub fn associativity_ok(&self) -> bool {
        self.associativity_residual <= self.tolerances.associativity
    }

    pub fn leibniz_ok(&self) -> bool {
        self.leibniz_residual <= self.tolerances.leibniz
    }

    pub fn normalization_ok(&self) -> bool {
        self.normalization_residual <= self.tolerances.normalization
    }

    pub fn cartan_ok(&self) -> bool {
        self.cartan_inclusion.as_ref().is_none_or(CartanInclusion::holds)
    }

    pub fn passed(&self) -> bool {
        self.square_ok()
            && self.richardson_ok()
            && self.associativity_ok()
            && self.leibniz_ok()
            && self.normalization_ok()
            && self.cartan_ok()
    }
}

/// Runs every sampled check. Sample `s` draws, for each arity `k ≤
/// max_arity`, a fresh random cochain of polynomial degree `s mod
/// (max_poly_degree + 1)` and a fresh group tuple.
pub fn run_checks(config: &GetzlerConfig) -> Result<GetzlerReport, GetzlerError> {
    let started = Instant::now();
    let alg = MatrixLieAlgebra::from_spec(&config.group)?;
    let action = GroupAction::<f64>::with_ambient(&alg, config.ambient)?;
    let ops = GetzlerOperators::new(action.clone(), config.step);
    let half = GetzlerOperators::new(action.clone(), config.step / 2.0);
    let shared: Arc<GroupAction<f64>> = Arc::clone(ops.action());
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut sampler = GroupSampler::new(&shared, config.scale, config.seed ^ 0x9e37_79b9);
    let pool_len = config.max_arity + 2;

    let (mut square, mut square_half, mut assoc, mut leibniz, mut norm) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for s in 0..config.samples {
        let degree = s % (config.max_poly_degree + 1);
        let pool = sampler.tuple(pool_len);
        for k in 0..=config.max_arity {
            let f = random_cochain(&shared, k, degree, config.max_x_degree, &mut rng);
            square = square.max(square_residual(&ops, &f, &pool)?);
            square_half = square_half.max(square_residual(&half, &f, &pool)?);
            norm = norm.max(normalization_residual(&ops.total(&f)?, &pool)?);
        }
        let small = |rng: &mut ChaCha8Rng, k| random_cochain(&shared, k, degree.min(1), 1, rng);
        let (ka, kb, kc) = (s % 2, (s / 2) % 2, (s / 4) % 2);
        let (a, b, c) = (small(&mut rng, ka), small(&mut rng, kb), small(&mut rng, kc));
        assoc = assoc.max(associativity_residual(&ops, &a, &b, &c, &pool)?);
        leibniz = leibniz.max(leibniz_residual(&ops, &a, &b, &pool)?);
    }

    let cartan_inclusion = if alg.is_special_linear() || config.ambient == 0 {
        let exact = GroupAction::<BigRational>::with_ambient(&alg, config.ambient)?;
        let f = killing_invariant(&alg, &exact);
        Some(cartan_inclusion(exact, &f, config.samples.min(20), config.seed)?)
    } else {
        None
    };

    Ok(GetzlerReport {
        config: config.clone(),
        tolerances: Tolerances::default(),
        square_residual: square,
        square_residual_half_step: square_half,
        richardson_ratio: if square_half > 0.0 { square / square_half } else { f64::INFINITY },
        associativity_residual: assoc,
        leibniz_residual: leibniz,
        normalization_residual: norm,
        cartan_inclusion,
        seconds: started.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::getzler::cochain::{op_d, op_dbar, op_iota};
    use crate::liealg::Family;

    fn setup() -> (GetzlerOperators<f64>, GroupSampler, ChaCha8Rng) {
        let sl2 = MatrixLieAlgebra::classical(Family::Sl, 2).unwrap();
        let action = GroupAction::<f64>::new(&sl2, ActionKind::Defining).unwrap();
        let sampler = GroupSampler::new(&action, 0.5, 11);
        (GetzlerOperators::new(action, 1e-3), sampler, ChaCha8Rng::seed_from_u64(5))
    }

    #[test]
    fn exact_squares_vanish() {
        let (ops, mut sampler, mut rng) = setup();
        let act = ops.action();
        for k in 0..=2 {
            let f = random_cochain(act, k, 2, 2, &mut rng);
            let pool = sampler.tuple(k + 2);
            let dd = CochainSum::single(op_d(&op_d(&f)));
            let ii = CochainSum::single(op_iota(act, &op_iota(act, &f)));
            let bb = CochainSum::single(op_dbar(act, &op_dbar(act, &f)));
            assert!(residual_at(&dd, &pool).unwrap() == 0.0);
            assert!(residual_at(&ii, &pool).unwrap() < 1e-14);
            assert!(residual_at(&bb, &pool).unwrap() < 1e-9, "k = {k}");
        }
    }

    #[test]
    fn degree_table() {
        let (ops, _, mut rng) = setup();
        let f = random_cochain(ops.action(), 1, 1, 1, &mut rng);
        let shift = |g: &EquivariantCochain<f64>| (g.arity() as i64 - 1, g.poly_degree().unwrap() as i64 - 1);
        assert_eq!(shift(&ops.d(&f)), (0, 1));
        assert_eq!(shift(&ops.iota(&f)), (0, 1));
        assert_eq!(shift(&ops.dbar(&f)), (1, 0));
        assert_eq!(shift(&ops.ibar(&f).unwrap()), (-1, 2));
        assert_eq!(ops.total(&f).unwrap().total_degree(), Some(f.total_degree().unwrap() + 1));
    }

    #[test]
    fn operators_preserve_normalization() {
        let (ops, mut sampler, mut rng) = setup();
        for k in 0..=2 {
            let f = random_cochain(ops.action(), k, 1, 2, &mut rng);
            let pool = sampler.tuple(k + 1);
            assert!(normalization_residual(&ops.total(&f).unwrap(), &pool).unwrap() < 1e-12);
        }
    }

    #[test]
    fn square_residual_is_second_order() {
        let (ops, mut sampler, mut rng) = setup();
        let half = GetzlerOperators::new((**ops.action()).clone(), 5e-4);
        let f = random_cochain(ops.action(), 1, 2, 2, &mut rng);
        let pool = sampler.tuple(3);
        let (r, h) = (square_residual(&ops, &f, &pool).unwrap(), square_residual(&half, &f, &pool).unwrap());
        assert!(r < 1e-5 && r / h > 3.0, "{r} {h}");
    }

    #[test]
    fn killing_quadratic_inclusion_is_exact() {
        for n in [2, 3] {
            let alg = MatrixLieAlgebra::classical(Family::Sl, n).unwrap();
            let action = GroupAction::<BigRational>::new(&alg, ActionKind::Defining).unwrap();
            let f = killing_invariant(&alg, &action);
            let r = cartan_inclusion(action, &f, 5, 1).unwrap();
            assert!(r.holds() && r.nontrivial, "{r:?}");
        }
    }

    #[test]
    fn non_invariant_quadratic_fails_inclusion() {
        let alg = MatrixLieAlgebra::classical(Family::Sl, 2).unwrap();
        let action = GroupAction::<BigRational>::new(&alg, ActionKind::Defining).unwrap();
        let e = PolyForm::omega(3, 2, 1);
        let r = cartan_inclusion(action, &e.mul(&e), 5, 1).unwrap();
        assert!(!r.dbar_vanishes);
    }

    #[test]
    fn gl1_on_a_point() {
        let gl1 = MatrixLieAlgebra::classical(Family::Gl, 1).unwrap();
        assert!(point_cartan_vanishes(&gl1, 4, 5, 3).unwrap());
    }

    #[test]
    fn small_run_passes() {
        let cfg = GetzlerConfig { samples: 6, ..GetzlerConfig::default() };
        let r = run_checks(&cfg).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert_eq!(r, GetzlerReport { seconds: r.seconds, ..run_checks(&cfg).unwrap() });
    }
}
