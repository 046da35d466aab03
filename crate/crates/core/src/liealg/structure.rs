use num_traits::Zero;

use crate::exact::{ExactMatrix, ExactScalar};

use super::LieError;

/// Solves for coordinates of matrices in the real span of a fixed basis.
///
/// Every entry contributes a real and an imaginary equation, so the
/// coefficients are rational even when the matrices have Gaussian entries.
#[derive(Clone, Debug)]
pub(crate) struct Coordinates {
    dim: usize,
    /// Real equations: one per (entry, part) of the flattened matrices.
    system: ExactMatrix,
    pivot_rows: Vec<usize>,
    pivot_inverse: ExactMatrix,
}

fn real_rows(m: &ExactMatrix) -> Vec<ExactScalar> {
    let mut out = Vec::with_capacity(2 * m.entries().len());
    for x in m.entries() {
        out.push(ExactScalar::rational(x.re().clone()));
        out.push(ExactScalar::rational(x.im().clone()));
    }
    out
}

impl Coordinates {
    /// Fails if the basis is linearly dependent over the reals.
    pub(crate) fn new(basis: &[ExactMatrix]) -> Option<Self> {
        let dim = basis.len();
        let columns: Vec<Vec<ExactScalar>> = basis.iter().map(real_rows).collect();
        let len = columns.first().map_or(0, Vec::len);
        let system = ExactMatrix::from_fn(len, dim, |r, c| columns[c][r].clone());
        let rref = system.transpose().rref();
        if rref.rank != dim {
            return None;
        }
        let pivot_rows = rref.pivot_columns;
        let square = ExactMatrix::from_fn(dim, dim, |i, j| system[(pivot_rows[i], j)].clone());
        let pivot_inverse = square.inverse()?;
        Some(Coordinates { dim, system, pivot_rows, pivot_inverse })
    }

    /// Coordinates of `m`, or `None` when `m` is outside the real span.
    pub(crate) fn solve(&self, m: &ExactMatrix) -> Option<Vec<ExactScalar>> {
        let rhs = real_rows(m);
        if rhs.len() != self.system.rows() {
            return None;
        }
        let picked = ExactMatrix::column(self.pivot_rows.iter().map(|&r| rhs[r].clone()).collect());
        let coords = (&self.pivot_inverse * &picked).into_entries();
        let back = &self.system * &ExactMatrix::column(coords.clone());
        (back.entries() == rhs.as_slice()).then_some(coords)
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }
}

/// Structure constants `c^k_{ab}` with `[e_a, e_b] = Σ_k c^k_{ab} e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    table: Vec<ExactScalar>,
}

impl StructureConstants {
    /// Builds the table by solving every bracket of basis matrices in the
    /// basis. The first pair whose bracket leaves the span is reported.
    pub fn from_basis(basis: &[ExactMatrix]) -> Result<Self, LieError> {
        let coords = Coordinates::new(basis).ok_or(LieError::Dependent)?;
        Self::with_coordinates(basis, &coords)
    }

    pub(crate) fn with_coordinates(basis: &[ExactMatrix], coords: &Coordinates) -> Result<Self, LieError> {
        let dim = coords.dim();
        let mut table = vec![ExactScalar::zero(); dim * dim * dim];
        for a in 0..dim {
            for b in (a + 1)..dim {
                let br = basis[a].commutator(&basis[b])?;
                let c = coords.solve(&br).ok_or(LieError::NotClosed { a, b })?;
                for (k, v) in c.into_iter().enumerate() {
                    table[(b * dim + a) * dim + k] = -&v;
                    table[(a * dim + b) * dim + k] = v;
                }
            }
        }
        Ok(StructureConstants { dim, table })
    }

    /// Table given directly as `c[a][b][k]`.
    pub fn from_table(dim: usize, table: Vec<ExactScalar>) -> Self {
        assert_eq!(table.len(), dim * dim * dim);
        StructureConstants { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^k_{ab}`.
    pub fn get(&self, a: usize, b: usize, k: usize) -> &ExactScalar {
        &self.table[(a * self.dim + b) * self.dim + k]
    }

    /// Matrix of `ad e_a`: entry `(k, b)` is `c^k_{ab}`.
    pub fn ad(&self, a: usize) -> ExactMatrix {
        ExactMatrix::from_fn(self.dim, self.dim, |k, b| self.get(a, b, k).clone())
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[ExactScalar], y: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut out = vec![ExactScalar::zero(); self.dim];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let s = xa * yb;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(a, b, k);
                    if !c.is_zero() {
                        *o += &(&s * c);
                    }
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim;
        (0..d).all(|a| (0..d).all(|b| (0..d).all(|k| *self.get(a, b, k) == -self.get(b, a, k))))
    }

    /// First `(a, b, c, l)` violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize, usize)> {
        let d = self.dim;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for l in 0..d {
                        let s: ExactScalar = (0..d)
                            .map(|m| {
                                self.get(a, b, m) * self.get(m, c, l)
                                    + self.get(b, c, m) * self.get(m, a, l)
                                    + self.get(c, a, m) * self.get(m, b, l)
                            })
                            .sum();
                        if !s.is_zero() {
                            return Some((a, b, c, l));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Zero::is_zero)
    }
}
