use std::collections::BTreeMap;

use num_traits::Zero;

use super::{ExactMatrix, ExactScalar};

/// Square linear operator on `K^dim` stored as a map of nonzero entries.
///
/// Used for derivation actions on symmetric and exterior powers, which are
/// very sparse and mostly block-structured.
#[derive(Clone, Debug, Default)]
pub struct SparseOperator {
    dim: usize,
    entries: BTreeMap<(usize, usize), ExactScalar>,
}

impl SparseOperator {
    pub fn new(dim: usize) -> Self {
        SparseOperator { dim, entries: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add_entry(&mut self, row: usize, col: usize, value: &ExactScalar) {
        if value.is_zero() {
            return;
        }
        let slot = self.entries.entry((row, col)).or_default();
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn get(&self, row: usize, col: usize) -> ExactScalar {
        self.entries.get(&(row, col)).cloned().unwrap_or_default()
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &ExactScalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(r, c)| r == c)
    }

    pub fn to_dense(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim, self.dim);
        for (&(r, c), v) in &self.entries {
            m[(r, c)] = v.clone();
        }
        m
    }

    /// `self · v` for a dense coordinate vector.
    pub fn apply(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut out = vec![ExactScalar::zero(); self.dim];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] += &(a * &v[c]);
            }
        }
        out
    }
}

/// Basis of `⋂ ker(op)` for operators on a common space.
///
/// Diagonal operators are handled first by discarding the coordinates they
/// do not annihilate (weight-space pruning); the rest are intersected one at
/// a time on the surviving subspace.
pub fn joint_kernel(ops: &[SparseOperator], dim: usize) -> Vec<Vec<ExactScalar>> {
    assert!(ops.iter().all(|op| op.dim == dim), "operator dimension mismatch");
    let mut alive = vec![true; dim];
    for op in ops.iter().filter(|op| op.is_diagonal()) {
        for (r, _, _) in op.nonzeros() {
            alive[r] = false;
        }
    }
    let coords: Vec<usize> = (0..dim).filter(|&i| alive[i]).collect();

    // Current subspace as columns over the surviving coordinates.
    let mut basis: Vec<Vec<ExactScalar>> = (0..coords.len())
        .map(|j| {
            let mut v = vec![ExactScalar::zero(); coords.len()];
            v[j] = num_traits::One::one();
            v
        })
        .collect();
    let mut position = vec![usize::MAX; dim];
    for (j, &c) in coords.iter().enumerate() {
        position[c] = j;
    }

    for op in ops.iter().filter(|op| !op.is_diagonal()) {
        if basis.is_empty() {
            break;
        }
        // Rows of op restricted to the surviving coordinates.
        let mut rows: BTreeMap<usize, BTreeMap<usize, ExactScalar>> = BTreeMap::new();
        for (r, c, v) in op.nonzeros() {
            if position[c] != usize::MAX {
                rows.entry(r).or_default().insert(position[c], v.clone());
            }
        }
        if rows.is_empty() {
            continue;
        }
        let rows: Vec<_> = rows.into_values().collect();
        let image = ExactMatrix::from_fn(rows.len(), basis.len(), |i, j| {
            rows[i]
                .iter()
                .filter(|(_, a)| !a.is_zero())
                .map(|(&k, a)| a * &basis[j][k])
                .sum()
        });
        let ker = image.kernel_basis();
        basis = ker
            .iter()
            .map(|w| {
                let mut v = vec![ExactScalar::zero(); coords.len()];
                for (j, b) in basis.iter().enumerate() {
                    let wj = &w[(j, 0)];
                    if wj.is_zero() {
                        continue;
                    }
                    for (k, x) in b.iter().enumerate() {
                        if !x.is_zero() {
                            v[k] += &(wj * x);
                        }
                    }
                }
                v
            })
            .collect();
    }

    basis
        .into_iter()
        .map(|v| {
            let mut full = vec![ExactScalar::zero(); dim];
            for (j, x) in v.into_iter().enumerate() {
                full[coords[j]] = x;
            }
            full
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_pruning_and_intersection() {
        // D1 = diag(0, 1, 0, 2), D2 swaps e0 and e2 with sign: kernel of D2 on
        // span{e0, e2} is e0 + e2.
        let mut d1 = SparseOperator::new(4);
        d1.add_entry(1, 1, &ExactScalar::from_int(1));
        d1.add_entry(3, 3, &ExactScalar::from_int(2));
        let mut d2 = SparseOperator::new(4);
        d2.add_entry(0, 0, &ExactScalar::from_int(1));
        d2.add_entry(0, 2, &ExactScalar::from_int(-1));
        let ker = joint_kernel(&[d1.clone(), d2.clone()], 4);
        assert_eq!(ker.len(), 1);
        for v in &ker {
            assert!(d1.apply(v).iter().all(Zero::is_zero));
            assert!(d2.apply(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn no_operators_gives_whole_space() {
        assert_eq!(joint_kernel(&[], 3).len(), 3);
    }
}
