use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::field::Field;

/// `Π (Ω^a)^{omega_a} · Π x_i^{x_i} · dx_S` with `S` a bitmask, wedged in
/// increasing index order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub omega: Vec<u8>,
    pub x: Vec<u8>,
    pub dx: u32,
}

impl Monomial {
    pub fn one(g_dim: usize, m: usize) -> Self {
        Monomial { omega: vec![0; g_dim], x: vec![0; m], dx: 0 }
    }

    pub fn form_degree(&self) -> usize {
        self.dx.count_ones() as usize
    }

    pub fn omega_degree(&self) -> usize {
        self.omega.iter().map(|&e| e as usize).sum()
    }

    /// `2·|Ω| + |dx|`; `x` carries no degree.
    pub fn degree(&self) -> usize {
        2 * self.omega_degree() + self.form_degree()
    }
}

/// Sign of `dx_A ∧ dx_B` reordered to increasing order, or `None` when the
/// sets meet.
fn wedge_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

/// Polynomial equivariant form in `S𝔤* ⊗ Ω•(ℝ^m)` with polynomial
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyForm<T> {
    g_dim: usize,
    m: usize,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Field> PolyForm<T> {
    pub fn zero(g_dim: usize, m: usize) -> Self {
        PolyForm { g_dim, m, terms: BTreeMap::new() }
    }

    pub fn term(g_dim: usize, m: usize, mono: Monomial, c: T) -> Self {
        let mut p = Self::zero(g_dim, m);
        p.add_term(mono, c);
        p
    }

    pub fn constant(g_dim: usize, m: usize, c: T) -> Self {
        Self::term(g_dim, m, Monomial::one(g_dim, m), c)
    }

    pub fn omega(g_dim: usize, m: usize, a: usize) -> Self {
        let mut mono = Monomial::one(g_dim, m);
        mono.omega[a] = 1;
        Self::term(g_dim, m, mono, T::one())
    }

    pub fn x(g_dim: usize, m: usize, i: usize) -> Self {
        let mut mono = Monomial::one(g_dim, m);
        mono.x[i] = 1;
        Self::term(g_dim, m, mono, T::one())
    }

    pub fn dx(g_dim: usize, m: usize, i: usize) -> Self {
        let mut mono = Monomial::one(g_dim, m);
        mono.dx = 1 << i;
        Self::term(g_dim, m, mono, T::one())
    }

    pub fn g_dim(&self) -> usize {
        self.g_dim
    }

    pub fn ambient(&self) -> usize {
        self.m
    }

    pub fn add_term(&mut self, mono: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.magnitude()))
    }

    /// Common `2·|Ω| + |dx|` of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.g_dim, self.m);
        if s.is_zero() {
            return out;
        }
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.clone() * s.clone());
        }
        out
    }

    /// Wedge product; `Ω` and `x` commute with everything.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.g_dim, self.m);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let Some(sign) = wedge_sign(ka.dx, kb.dx) else { continue };
                let mono = Monomial {
                    omega: ka.omega.iter().zip(&kb.omega).map(|(a, b)| a + b).collect(),
                    x: ka.x.iter().zip(&kb.x).map(|(a, b)| a + b).collect(),
                    dx: ka.dx | kb.dx,
                };
                out.add_term(mono, ca.clone() * cb.clone() * T::from_i64(sign));
            }
        }
        out
    }

    /// Exterior derivative in `x`.
    pub fn exterior_d(&self) -> Self {
        let mut out = Self::zero(self.g_dim, self.m);
        for (k, c) in &self.terms {
            for i in 0..self.m {
                if k.x[i] == 0 || k.dx & (1 << i) != 0 {
                    continue;
                }
                let sign = if (k.dx & ((1u32 << i) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
                let mut mono = k.clone();
                mono.x[i] -= 1;
                mono.dx |= 1 << i;
                out.add_term(mono, c.clone() * T::from_i64(sign * i64::from(k.x[i])));
            }
        }
        out
    }

    /// Interior product with the vector field `Σ_i v_i ∂/∂x_i`, where each
    /// `v_i` has no `dx` part.
    pub fn contract(&self, v: &[PolyForm<T>]) -> Self {
        let mut out = Self::zero(self.g_dim, self.m);
        for (k, c) in &self.terms {
            let mut pos = 0i64;
            for i in 0..self.m {
                if k.dx & (1 << i) == 0 {
                    continue;
                }
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                pos += 1;
                let mut rest = k.clone();
                rest.dx &= !(1 << i);
                let base = Self::term(self.g_dim, self.m, rest, c.clone() * T::from_i64(sign));
                out = out.add(&base.mul(&v[i]));
            }
        }
        out
    }

    /// Substitutes each generator by a polynomial form: `x_i ↦ xs[i]`,
    /// `dx_i ↦ dxs[i]`, `Ω^a ↦ omegas[a]`.
    pub fn substitute(&self, xs: &[PolyForm<T>], dxs: &[PolyForm<T>], omegas: &[PolyForm<T>]) -> Self {
        let mut out = Self::zero(self.g_dim, self.m);
        for (k, c) in &self.terms {
            let mut acc = Self::constant(self.g_dim, self.m, c.clone());
            for (a, &e) in k.omega.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&omegas[a]);
                }
            }
            for (i, &e) in k.x.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&xs[i]);
                }
            }
            for (i, dx) in dxs.iter().enumerate() {
                if k.dx & (1 << i) != 0 {
                    acc = acc.mul(dx);
                }
            }
            out = out.add(&acc);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = PolyForm<f64>;

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b11, 0b01), None);
        assert_eq!(wedge_sign(0b101, 0b010), Some(-1));
    }

    #[test]
    fn d_squared_and_product_rule() {
        let x0 = P::x(1, 3, 0);
        let x2 = P::x(1, 3, 2);
        let f = x0.mul(&x0).mul(&x2).mul(&P::dx(1, 3, 1)).add(&P::omega(1, 3, 0).mul(&x2));
        assert!(f.exterior_d().exterior_d().is_zero());
        let d = x0.mul(&P::dx(1, 3, 1)).exterior_d();
        assert_eq!(d, P::dx(1, 3, 0).mul(&P::dx(1, 3, 1)));
    }

    #[test]
    fn contraction_of_linear_field() {
        // ι_V dx_1 = V_1, ι ι = 0
        let v = vec![P::x(1, 2, 1), P::x(1, 2, 0).scale(&-1.0)];
        assert_eq!(P::dx(1, 2, 1).contract(&v), v[1]);
        let vol = P::dx(1, 2, 0).mul(&P::dx(1, 2, 1));
        assert!(vol.contract(&v).contract(&v).is_zero());
    }

    #[test]
    fn degrees() {
        let f = P::omega(2, 2, 1).mul(&P::x(2, 2, 0));
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.add(&P::dx(2, 2, 0)).degree(), None);
        assert_eq!(P::zero(2, 2).degree(), None);
    }
}
