use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{rational_to_f64, ExactScalar};

/// Scalars for cochain values: `f64` for sampled checks, `BigRational` for
/// exact ones.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
    fn magnitude(&self) -> f64;
    /// `exp(m)` when the field supports it.
    fn exp(m: &SqMat<Self>) -> Option<SqMat<Self>>;
    /// Converts an exact real scalar.
    fn from_exact(x: &ExactScalar) -> Self;
}

impl Field for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn exp(m: &SqMat<f64>) -> Option<SqMat<f64>> {
        Some(m.expm())
    }

    fn from_exact(x: &ExactScalar) -> Self {
        rational_to_f64(x.re())
    }
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn exp(_: &SqMat<BigRational>) -> Option<SqMat<BigRational>> {
        None
    }

    fn from_exact(x: &ExactScalar) -> Self {
        x.re().clone()
    }
}

/// Dense square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SqMat<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Field> SqMat<T> {
    pub fn zeros(n: usize) -> Self {
        SqMat { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        SqMat { n, data }
    }

    pub fn from_exact(m: &crate::exact::ExactMatrix) -> Self {
        assert!(m.is_square());
        Self::from_fn(m.rows(), |i, j| T::from_exact(&m[(i, j)]))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.data[i * n + j].clone() + a.clone() * rhs.data[k * n + j].clone();
                    out.data[i * n + j] = v;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        SqMat { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        SqMat { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        SqMat { n: self.n, data: self.data.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Gauss–Jordan with largest-magnitude pivots.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .max_by(|&x, &y| a.get(x, col).magnitude().total_cmp(&a.get(y, col).magnitude()))?;
            if pivot != col {
                for j in 0..n {
                    a.data.swap(pivot * n + j, col * n + j);
                    inv.data.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                a.data[col * n + j] = a.data[col * n + j].clone() / p.clone();
                inv.data[col * n + j] = inv.data[col * n + j].clone() / p.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.data[r * n + j] = a.data[r * n + j].clone() - f.clone() * a.data[col * n + j].clone();
                    inv.data[r * n + j] = inv.data[r * n + j].clone() - f.clone() * inv.data[col * n + j].clone();
                }
            }
        }
        Some(inv)
    }
}

impl SqMat<f64> {
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Scaling and squaring with a degree-18 Taylor polynomial.
    pub fn expm(&self) -> Self {
        let norm = self.max_abs() * self.n as f64;
        let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
        let a = self.scale(&0.5f64.powi(s));
        let mut term = Self::identity(self.n);
        let mut sum = term.clone();
        for k in 1..=18 {
            term = term.mul(&a).scale(&(1.0 / k as f64));
            sum = sum.add(&term);
        }
        for _ in 0..s {
            sum = sum.mul(&sum);
        }
        sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_nilpotent_and_diagonal() {
        let n = SqMat::from_fn(2, |i, j| if (i, j) == (0, 1) { 3.0 } else { 0.0 });
        let e = n.expm();
        assert!((e.get(0, 1) - 3.0).abs() < 1e-14 && (e.get(0, 0) - 1.0).abs() < 1e-14);
        let h = SqMat::from_fn(2, |i, j| if i == j { [2.0, -2.0][i] } else { 0.0 });
        let e = h.expm();
        assert!((e.get(0, 0) - 2f64.exp()).abs() < 1e-12 * 2f64.exp());
        assert!((e.get(1, 1) - (-2f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn exact_inverse() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let m = SqMat::from_fn(2, |i, j| [[q(2, 1), q(1, 3)], [q(0, 1), q(5, 7)]][i][j].clone());
        assert!(m.mul(&m.inverse().unwrap()).is_identity());
        let sing: SqMat<BigRational> = SqMat::zeros(2);
        assert!(sing.inverse().is_none());
    }
}
