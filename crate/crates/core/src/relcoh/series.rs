use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::liealg::{invariant_polynomial_dimension, Family, MatrixLieAlgebra};

use super::{cartan_complement, relative_ce_cohomology, RelcohError};

/// Integer coefficients of `t^0 … t^N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincareSeries {
    truncation: usize,
    coefficients: Vec<i64>,
}

impl PoincareSeries {
    pub fn zero(truncation: usize) -> Self {
        PoincareSeries { truncation, coefficients: vec![0; truncation + 1] }
    }

    pub fn one(truncation: usize) -> Self {
        Self::monomial(0, 1, truncation)
    }

    pub fn monomial(degree: usize, coefficient: i64, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if degree <= truncation {
            s.coefficients[degree] = coefficient;
        }
        s
    }

    /// Pads with zeros or drops terms beyond `truncation`.
    pub fn from_coefficients(coefficients: &[i64], truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        for (i, c) in coefficients.iter().take(truncation + 1).enumerate() {
            s.coefficients[i] = *c;
        }
        s
    }

    /// `1 + t^d`.
    pub fn exterior(degree: usize, truncation: usize) -> Self {
        &Self::one(truncation) + &Self::monomial(degree, 1, truncation)
    }

    /// `1/(1 − t^d)`.
    pub fn polynomial(degree: usize, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        for k in (0..=truncation).step_by(degree.max(1)) {
            s.coefficients[k] = 1;
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn coefficient(&self, degree: usize) -> i64 {
        self.coefficients.get(degree).copied().unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coefficients.iter().all(|&c| c >= 0)
    }

    /// Same series cut at a smaller order.
    pub fn truncate(&self, truncation: usize) -> Self {
        Self::from_coefficients(&self.coefficients, truncation.min(self.truncation))
    }
}

impl Add for &PoincareSeries {
    type Output = PoincareSeries;

    fn add(self, rhs: &PoincareSeries) -> PoincareSeries {
        let n = self.truncation.min(rhs.truncation);
        let c: Vec<i64> = (0..=n).map(|i| self.coefficients[i] + rhs.coefficients[i]).collect();
        PoincareSeries { truncation: n, coefficients: c }
    }
}

impl Sub for &PoincareSeries {
    type Output = PoincareSeries;

    fn sub(self, rhs: &PoincareSeries) -> PoincareSeries {
        let n = self.truncation.min(rhs.truncation);
        let c: Vec<i64> = (0..=n).map(|i| self.coefficients[i] - rhs.coefficients[i]).collect();
        PoincareSeries { truncation: n, coefficients: c }
    }
}

impl Mul for &PoincareSeries {
    type Output = PoincareSeries;

    fn mul(self, rhs: &PoincareSeries) -> PoincareSeries {
        let n = self.truncation.min(rhs.truncation);
        let mut c = vec![0i64; n + 1];
        for (i, a) in self.coefficients.iter().enumerate().take(n + 1).filter(|(_, a)| **a != 0) {
            for (j, b) in rhs.coefficients.iter().enumerate().take(n + 1 - i) {
                c[i + j] += a * b;
            }
        }
        PoincareSeries { truncation: n, coefficients: c }
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, &c) in self.coefficients.iter().enumerate().filter(|(_, c)| **c != 0) {
            if !first {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            match (d, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{d}")?,
                _ => write!(f, "{a}t^{d}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.truncation + 1)
    }
}

/// `Π (1 + t^d)` over exterior generators times `Π 1/(1 − t^e)` over
/// polynomial generators.
pub fn series_graded_algebra(exterior: &[usize], polynomial: &[usize], truncation: usize) -> Result<PoincareSeries, RelcohError> {
    if exterior.iter().chain(polynomial).any(|&d| d == 0) {
        return Err(RelcohError::ZeroDegree);
    }
    let mut s = PoincareSeries::one(truncation);
    for &d in exterior {
        s = &s * &PoincareSeries::exterior(d, truncation);
    }
    for &d in polynomial {
        s = &s * &PoincareSeries::polynomial(d, truncation);
    }
    Ok(s)
}

/// Cohomology series of `Λ[h] ⊗ ℝ[c]` with `d h = c`, computed degree by
/// degree from `dim C^n − rank d_n − rank d_{n−1}`.
fn koszul_pair_series(h: usize, c: usize, truncation: usize) -> PoincareSeries {
    let mut dims = vec![0i64; truncation + 2];
    let mut sources = vec![0i64; truncation + 2];
    for k in 0.. {
        let deg = k * c;
        if deg > truncation + 1 {
            break;
        }
        dims[deg] += 1;
        if h + deg <= truncation + 1 {
            dims[h + deg] += 1;
            sources[h + deg] += 1;
        }
    }
    let coeffs: Vec<i64> = (0..=truncation)
        .map(|n| dims[n] - sources[n] - if n > 0 { sources[n - 1] } else { 0 })
        .collect();
    PoincareSeries::from_coefficients(&coeffs, truncation)
}

/// Cancels each transgressive pair `(h, c = h + 1)` and returns the series of
/// what survives, `Π_pairs H(Λ[h] ⊗ ℝ[c]) ⊗ ℝ[survivors]`.
pub fn koszul_cancellation(pairs: &[(usize, usize)], survivors: &[usize], truncation: usize) -> Result<PoincareSeries, RelcohError> {
    let mut s = series_graded_algebra(&[], survivors, truncation)?;
    for &(h, c) in pairs {
        if h == 0 || c != h + 1 {
            return Err(RelcohError::MalformedPair { h, c });
        }
        s = &s * &koszul_pair_series(h, c, truncation);
    }
    Ok(s)
}

fn largest_odd_at_most(n: usize) -> usize {
    if n % 2 == 1 {
        n
    } else {
        n - 1
    }
}

/// `(2i − 1, 2i)` for odd `i` with `3 ≤ i ≤ ⟨n⟩`.
pub fn transgression_pairs(n: usize) -> Vec<(usize, usize)> {
    (3..=largest_odd_at_most(n.max(1))).step_by(2).map(|i| (2 * i - 1, 2 * i)).collect()
}

fn survivors(n: usize) -> Vec<usize> {
    (2..=n).filter(|i| i % 2 == 0).map(|i| 2 * i).collect()
}

/// The closed form is only claimed for odd `n ≥ 3`.
pub fn closed_form_applies(n: usize) -> bool {
    n >= 3 && n % 2 == 1
}

/// `Λ[h_3, h_5, …, h_⟨n⟩] ⊗ ℝ[c_2, …, c_n]` with `|h_i| = 2i − 1`, `|c_i| = 2i`.
pub fn e1_page_series(n: usize, truncation: usize) -> Result<PoincareSeries, RelcohError> {
    if n < 2 {
        return Err(RelcohError::Rank(n));
    }
    let odd: Vec<usize> = transgression_pairs(n).iter().map(|p| p.0).collect();
    let even: Vec<usize> = (2..=n).map(|i| 2 * i).collect();
    series_graded_algebra(&odd, &even, truncation)
}

/// What survives cancelling every `h_i` against `c_i`.
pub fn e_infinity_series(n: usize, truncation: usize) -> Result<PoincareSeries, RelcohError> {
    if n < 2 {
        return Err(RelcohError::Rank(n));
    }
    koszul_cancellation(&transgression_pairs(n), &survivors(n), truncation)
}

/// `ℝ[c_2, c_4, …, c_{2⌊n/2⌋}]`, with `|c_{2j}| = 4j`.
pub fn target_series(n: usize, truncation: usize) -> Result<PoincareSeries, RelcohError> {
    let degrees: Vec<usize> = (1..=n / 2).map(|j| 4 * j).collect();
    series_graded_algebra(&[], &degrees, truncation)
}

/// `Σ_d dim (S^d 𝔤*)^𝔤 · t^{2d}` up to `t^N`.
pub fn invariant_polynomial_series(alg: &MatrixLieAlgebra, truncation: usize, ceiling: usize) -> Result<PoincareSeries, RelcohError> {
    let mut s = PoincareSeries::zero(truncation);
    for d in 0..=truncation / 2 {
        s.coefficients[2 * d] = invariant_polynomial_dimension(alg, d, ceiling)? as i64;
    }
    Ok(s)
}

/// `E₁` from computed data: Betti numbers of `(𝔰𝔩(n), 𝔰𝔬(n))` times the
/// invariant-polynomial series of `𝔰𝔩(n)`.
pub fn e1_page_series_computed(n: usize, truncation: usize, ceiling: usize) -> Result<PoincareSeries, RelcohError> {
    let g = MatrixLieAlgebra::classical(Family::Sl, n)?;
    let k = MatrixLieAlgebra::classical(Family::So, n)?;
    let betti = relative_ce_cohomology(&cartan_complement(&g, &k)?, super::DEFAULT_WEDGE_CEILING)?.betti;
    let b: Vec<i64> = betti.iter().map(|&x| x as i64).collect();
    let hd = PoincareSeries::from_coefficients(&b, truncation);
    Ok(&hd * &invariant_polynomial_series(&g, truncation, ceiling)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(s: &PoincareSeries) -> Vec<i64> {
        s.coefficients().to_vec()
    }

    #[test]
    fn basic_series() {
        assert_eq!(coeffs(&series_graded_algebra(&[3], &[], 5).unwrap()), vec![1, 0, 0, 1, 0, 0]);
        let c2 = series_graded_algebra(&[], &[4], 12).unwrap();
        assert_eq!(c2.to_string(), "1 + t^4 + t^8 + t^12 + O(t^13)");
        assert!(series_graded_algebra(&[0], &[], 3).is_err());
    }

    #[test]
    fn n3_e1_by_hand() {
        // count solutions of 5e + 4a + 6b = n with e ∈ {0, 1}
        let s = e1_page_series(3, 10).unwrap();
        let brute: Vec<i64> = (0..=10usize)
            .map(|n| {
                let mut c = 0;
                for e in 0..=1 {
                    for a in 0..=n / 4 {
                        for b in 0..=n / 6 {
                            c += i64::from(5 * e + 4 * a + 6 * b == n);
                        }
                    }
                }
                c
            })
            .collect();
        assert_eq!(coeffs(&s), brute);
    }

    #[test]
    fn koszul_examples() {
        let e = koszul_cancellation(&[(5, 6)], &[4], 20).unwrap();
        assert_eq!(e, series_graded_algebra(&[], &[4], 20).unwrap());
        let e = koszul_cancellation(&[(5, 6), (9, 10)], &[4, 8], 40).unwrap();
        assert_eq!(e, series_graded_algebra(&[], &[4, 8], 40).unwrap());
        assert_eq!(koszul_cancellation(&[], &[], 7).unwrap(), PoincareSeries::one(7));
        assert_eq!(koszul_cancellation(&[(5, 7)], &[], 7), Err(RelcohError::MalformedPair { h: 5, c: 7 }));
    }

    #[test]
    fn pair_series_is_one() {
        for (h, n) in [(1, 9), (5, 30), (9, 40)] {
            assert_eq!(koszul_pair_series(h, h + 1, n), PoincareSeries::one(n));
        }
    }

    #[test]
    fn transgression_bookkeeping() {
        assert_eq!(transgression_pairs(3), vec![(5, 6)]);
        assert_eq!(transgression_pairs(4), vec![(5, 6)]);
        assert_eq!(transgression_pairs(7), vec![(5, 6), (9, 10), (13, 14)]);
        assert!(transgression_pairs(2).is_empty());
        assert_eq!(survivors(5), vec![4, 8]);
    }

    #[test]
    fn display_signs() {
        let s = PoincareSeries::from_coefficients(&[-1, 2, 0, -3], 3);
        assert_eq!(s.to_string(), "-1 + 2t - 3t^3 + O(t^4)");
        assert_eq!(PoincareSeries::zero(2).to_string(), "0 + O(t^3)");
    }
}
