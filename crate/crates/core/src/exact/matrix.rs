use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ExactError, ExactScalar};

/// Dense row-major matrix over [`ExactScalar`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

/// Result of [`ExactMatrix::rref`].
#[derive(Clone, Debug, PartialEq)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![ExactScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ExactScalar::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<ExactScalar>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Integer matrix from nested rows; panics on ragged input.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |r, c| ExactScalar::from_int(rows[r][c]))
    }

    /// Column vector.
    pub fn column(entries: Vec<ExactScalar>) -> Self {
        let n = entries.len();
        ExactMatrix { rows: n, cols: 1, data: entries }
    }

    /// `E_{jk}`: the `n×n` matrix unit.
    pub fn unit(n: usize, j: usize, k: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(j, k)] = ExactScalar::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<ExactScalar> {
        self.data
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column_entries(&self, c: usize) -> Vec<ExactScalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(ExactScalar::is_real)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn checked_mul(&self, rhs: &ExactMatrix) -> Result<Self, ExactError> {
        if self.cols != rhs.rows {
            return Err(ExactError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, rhs: &ExactMatrix) -> Result<(), ExactError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(ExactError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &ExactMatrix) -> Result<Self, ExactError> {
        self.check_same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_sub(&self, rhs: &ExactMatrix) -> Result<Self, ExactError> {
        self.check_same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Reduced row-echelon form. The pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &m[(row, c)];
                    m[(r, c)] -= &delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { reduced: m, rank: pivots.len(), pivot_columns: pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space as column vectors, one per free column of
    /// the reduced form.
    pub fn kernel_basis(&self) -> Vec<ExactMatrix> {
        let Rref { reduced, pivot_columns, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivot_columns {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![ExactScalar::zero(); self.cols];
                v[free] = ExactScalar::one();
                for (i, &p) in pivot_columns.iter().enumerate() {
                    v[p] = -&reduced[(i, free)];
                }
                ExactMatrix::column(v)
            })
            .collect()
    }

    /// One solution of `self · x = b` if the system is consistent. `b` may
    /// have several columns; free variables are set to zero.
    pub fn solve(&self, b: &ExactMatrix) -> Result<Option<ExactMatrix>, ExactError> {
        if b.rows != self.rows {
            return Err(ExactError::Shape(format!(
                "right-hand side has {} rows, system has {}",
                b.rows, self.rows
            )));
        }
        let aug = Self::from_fn(self.rows, self.cols + b.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                b[(r, c - self.cols)].clone()
            }
        });
        let Rref { reduced, pivot_columns, .. } = aug.rref();
        if pivot_columns.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.cols, b.cols);
        for (i, &p) in pivot_columns.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = reduced[(i, self.cols + j)].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Self::identity(self.rows)).ok()??;
        (self.rank() == self.rows).then_some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `[X, Y] = XY − YX`.
    pub fn commutator(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, ExactError> {
        self.checked_mul(rhs)?.checked_sub(&rhs.checked_mul(self)?)
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = ExactScalar;

    fn index(&self, (r, c): (usize, usize)) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut ExactScalar {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;

    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_add(rhs).expect("matrix shape mismatch")
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;

    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_sub(rhs).expect("matrix shape mismatch")
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;

    fn neg(self) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity() {
        let r = ExactMatrix::identity(3).rref();
        assert_eq!(r.reduced, ExactMatrix::identity(3));
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_columns, vec![0, 1, 2]);
    }

    #[test]
    fn rref_dependent_rows() {
        let r = ExactMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.reduced, ExactMatrix::from_int_rows(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_columns, vec![0]);
    }

    #[test]
    fn kernel_edge_cases() {
        assert!(ExactMatrix::identity(2).kernel_basis().is_empty());
        assert_eq!(ExactMatrix::zeros(2, 3).kernel_basis().len(), 3);
        let m = ExactMatrix::from_int_rows(&[&[1, 1, 0]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!((&m * v).is_zero());
        }
    }

    #[test]
    fn solve_cases() {
        let id = ExactMatrix::identity(2);
        let b = ExactMatrix::from_int_rows(&[&[5], &[-3]]);
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);

        let m = ExactMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(m.solve(&ExactMatrix::from_int_rows(&[&[1], &[3]])).unwrap().is_none());
        let rhs = ExactMatrix::from_int_rows(&[&[1], &[2]]);
        let x = m.solve(&rhs).unwrap().unwrap();
        assert_eq!(&m * &x, rhs);

        assert!(m.solve(&ExactMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = ExactMatrix::from_int_rows(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, ExactMatrix::identity(2));
        assert!(ExactMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn gaussian_rref() {
        let i = ExactScalar::i();
        let one = ExactScalar::one();
        // rows (1, i) and (i, -1) are dependent over Q(i)
        let m = ExactMatrix::from_vec(2, 2, vec![one.clone(), i.clone(), i.clone(), -one]).unwrap();
        assert_eq!(m.rank(), 1);
    }
}
