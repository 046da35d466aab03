use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::action::GroupAction;
use super::cochain::EquivariantCochain;
use super::field::SqMat;
use super::polyform::{Monomial, PolyForm};
use super::GetzlerError;

/// `exp(Σ u_a e_a)` with `u_a` uniform in `[−scale, scale]`.
#[derive(Clone, Debug)]
pub struct GroupSampler {
    basis: Vec<SqMat<f64>>,
    scale: f64,
    rng: ChaCha8Rng,
}

impl GroupSampler {
    pub fn new(action: &GroupAction<f64>, scale: f64, seed: u64) -> Self {
        GroupSampler { basis: action.basis().to_vec(), scale, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn sample(&mut self) -> SqMat<f64> {
        let n = self.basis.first().map_or(0, SqMat::size);
        let mut z = SqMat::zeros(n);
        for e in &self.basis {
            let u = self.rng.gen_range(-self.scale..=self.scale);
            z = z.add(&e.scale(&u));
        }
        z.expm()
    }

    pub fn tuple(&mut self, k: usize) -> Vec<SqMat<f64>> {
        (0..k).map(|_| self.sample()).collect()
    }
}

#[derive(Clone, Debug)]
enum ExactGenerator {
    /// `N` with `N² = 0`, sampled as `I + rN`.
    Unipotent(SqMat<BigRational>),
    /// Integer diagonal `h`, sampled as `diag(q^{h_i})`.
    Torus(Vec<i32>),
}

/// Rational group elements built from unipotent and torus factors of the
/// basis; only basis elements of those two shapes are used.
#[derive(Clone, Debug)]
pub struct ExactSampler {
    n: usize,
    generators: Vec<ExactGenerator>,
    rng: ChaCha8Rng,
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl ExactSampler {
    pub fn new(action: &GroupAction<BigRational>, seed: u64) -> Result<Self, GetzlerError> {
        let n = action.matrix_size();
        let mut generators = Vec::new();
        for e in action.basis() {
            let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || e.get(i, j).is_zero()));
            if diagonal {
                let ints: Option<Vec<i32>> = (0..n)
                    .map(|i| {
                        let x = e.get(i, i);
                        x.is_integer().then(|| x.to_integer().try_into().ok()).flatten()
                    })
                    .collect();
                if let Some(h) = ints.filter(|h| h.iter().any(|&v| v != 0)) {
                    generators.push(ExactGenerator::Torus(h));
                }
            } else if e.mul(e).entries().iter().all(Zero::is_zero) {
                generators.push(ExactGenerator::Unipotent(e.clone()));
            }
        }
        if generators.is_empty() {
            return Err(GetzlerError::NoExactSampler(action.name().to_string()));
        }
        Ok(ExactSampler { n, generators, rng: ChaCha8Rng::seed_from_u64(seed) })
    }

    fn factor(&mut self) -> SqMat<BigRational> {
        let pick = self.rng.gen_range(0..self.generators.len());
        match &self.generators[pick] {
            ExactGenerator::Unipotent(e) => {
                let r = rational(self.rng.gen_range(-5..=5), self.rng.gen_range(1..=4));
                SqMat::identity(self.n).add(&e.scale(&r))
            }
            ExactGenerator::Torus(h) => {
                let q = [rational(2, 1), rational(3, 1), rational(1, 2), rational(2, 3)][self.rng.gen_range(0..4)].clone();
                let mut m = SqMat::identity(self.n);
                for (i, &p) in h.iter().enumerate() {
                    let v = if p >= 0 { num_traits::pow(q.clone(), p as usize) } else { BigRational::one() / num_traits::pow(q.clone(), (-p) as usize) };
                    m.set(i, i, v);
                }
                m
            }
        }
    }

    /// Product of three random factors.
    pub fn sample(&mut self) -> SqMat<BigRational> {
        (0..3).fold(SqMat::identity(self.n), |acc, _| acc.mul(&self.factor()))
    }

    pub fn tuple(&mut self, k: usize) -> Vec<SqMat<BigRational>> {
        (0..k).map(|_| self.sample()).collect()
    }
}

/// All monomials with `|Ω| = w`, `|dx| = s` and `x`-degree at most `x_max`.
fn monomials(g_dim: usize, m: usize, w: usize, s: usize, x_max: usize) -> Vec<Monomial> {
    fn multi(vars: usize, total: usize) -> Vec<Vec<u8>> {
        if vars == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for first in 0..=total {
            for mut rest in multi(vars - 1, total - first) {
                rest.insert(0, first as u8);
                out.push(rest);
            }
        }
        out
    }
    let omegas = multi(g_dim, w);
    let xs: Vec<Vec<u8>> = (0..=x_max).flat_map(|t| multi(m, t)).collect();
    let dxs: Vec<u32> = (0u32..(1 << m)).filter(|b| b.count_ones() as usize == s).collect();
    let mut out = Vec::new();
    for o in &omegas {
        for x in &xs {
            for &dx in &dxs {
                out.push(Monomial { omega: o.clone(), x: x.clone(), dx });
            }
        }
    }
    out
}

/// Random polynomial form of degree `2|Ω| + |dx| = degree` with up to
/// `terms` monomials, coefficients drawn from `[−1, 1]` and then scaled to
/// unit `ℓ¹` norm.
pub fn random_polyform(
    g_dim: usize,
    m: usize,
    degree: usize,
    x_max: usize,
    terms: usize,
    rng: &mut ChaCha8Rng,
) -> PolyForm<f64> {
    let pool: Vec<Monomial> = (0..=degree / 2)
        .filter(|w| degree - 2 * w <= m)
        .flat_map(|w| monomials(g_dim, m, w, degree - 2 * w, x_max))
        .collect();
    let mut p = PolyForm::zero(g_dim, m);
    if pool.is_empty() {
        return p;
    }
    for _ in 0..terms {
        let mono = pool[rng.gen_range(0..pool.len())].clone();
        p.add_term(mono, rng.gen_range(-1.0..=1.0));
    }
    let norm: f64 = p.terms().map(|(_, c)| c.abs()).sum();
    if norm > 0.0 {
        p = p.scale(&(1.0 / norm));
    }
    p
}

/// `φ(g) = ‖g − I‖² + tr(C(g − I))`, zero at the identity.
#[derive(Clone, Debug)]
struct Bump {
    c: SqMat<f64>,
}

impl Bump {
    fn random(n: usize, rng: &mut ChaCha8Rng) -> Self {
        Bump { c: SqMat::from_fn(n, |_, _| rng.gen_range(-1.0..=1.0)) }
    }

    fn eval(&self, g: &SqMat<f64>) -> f64 {
        let d = g.sub(&SqMat::identity(g.size()));
        d.entries().iter().map(|x| x * x).sum::<f64>() + self.c.mul(&d).trace()
    }
}

/// `Σ_r Π_i φ_{r,i}(g_i) · P_r` over two random summands, each `P_r` of
/// polynomial degree `degree`.
pub fn random_cochain(
    action: &GroupAction<f64>,
    arity: usize,
    degree: usize,
    x_max: usize,
    rng: &mut ChaCha8Rng,
) -> EquivariantCochain<f64> {
    let (d, m, n) = (action.g_dim(), action.ambient(), action.matrix_size());
    let summands: Vec<(Vec<Bump>, PolyForm<f64>)> = (0..2)
        .map(|_| {
            let bumps = (0..arity).map(|_| Bump::random(n, rng)).collect();
            (bumps, random_polyform(d, m, degree, x_max, 4, rng))
        })
        .collect();
    EquivariantCochain::new(arity, Some(degree), move |g| {
        let mut out = PolyForm::zero(d, m);
        for (bumps, p) in &summands {
            let w: f64 = bumps.iter().zip(g).map(|(b, gi)| b.eval(gi)).product();
            out = out.add(&p.scale(&w));
        }
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::getzler::action::ActionKind;
    use crate::liealg::{Family, MatrixLieAlgebra};

    #[test]
    fn float_samples_have_unit_determinant() {
        let sl2 = MatrixLieAlgebra::classical(Family::Sl, 2).unwrap();
        let act = GroupAction::<f64>::new(&sl2, ActionKind::Defining).unwrap();
        let mut s = GroupSampler::new(&act, 0.5, 7);
        for g in s.tuple(20) {
            let det = g.get(0, 0) * g.get(1, 1) - g.get(0, 1) * g.get(1, 0);
            assert!((det - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_samples_are_invertible_and_seeded() {
        let sl3 = MatrixLieAlgebra::classical(Family::Sl, 3).unwrap();
        let act = GroupAction::<BigRational>::new(&sl3, ActionKind::Defining).unwrap();
        let a = ExactSampler::new(&act, 3).unwrap().tuple(5);
        let b = ExactSampler::new(&act, 3).unwrap().tuple(5);
        assert_eq!(a, b);
        assert!(a.iter().all(|g| g.inverse().is_some()));
    }

    #[test]
    fn random_cochains_vanish_at_identity() {
        let sl2 = MatrixLieAlgebra::classical(Family::Sl, 2).unwrap();
        let act = GroupAction::<f64>::new(&sl2, ActionKind::Defining).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut s = GroupSampler::new(&act, 0.5, 1);
        let f = random_cochain(&act, 2, 2, 2, &mut rng);
        let mut g = s.tuple(2);
        assert!(!f.evaluate(&g).unwrap().is_zero());
        g[1] = SqMat::identity(2);
        assert!(f.evaluate(&g).unwrap().is_zero());
        assert_eq!(random_polyform(3, 2, 2, 2, 5, &mut rng).degree(), Some(2));
    }

    #[test]
    fn monomial_pool_sizes() {
        // Ω-degree 1 on sl2, no dx, x-degree ≤ 1 over two variables
        assert_eq!(monomials(3, 2, 1, 0, 1).len(), 3 * 3);
        assert_eq!(monomials(3, 2, 0, 2, 0).len(), 1);
        assert!(monomials(3, 2, 0, 3, 0).is_empty());
    }
}
