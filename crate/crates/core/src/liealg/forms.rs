use num_traits::Zero;

use crate::exact::{joint_kernel, ExactMatrix, ExactScalar, SparseOperator};

use super::MatrixLieAlgebra;

/// `B_ab = tr(ad e_a ∘ ad e_b)`, computed from the structure constants only.
pub fn killing_form(alg: &MatrixLieAlgebra) -> ExactMatrix {
    let c = alg.structure_constants();
    let d = c.dim();
    ExactMatrix::from_fn(d, d, |a, b| {
        let mut s = ExactScalar::zero();
        for k in 0..d {
            for m in 0..d {
                let x = c.get(a, m, k);
                if x.is_zero() {
                    continue;
                }
                let y = c.get(b, k, m);
                if !y.is_zero() {
                    s += &(x * y);
                }
            }
        }
        s
    })
}

/// `Tr(e_a e_b)` of the defining matrices.
pub fn trace_form(alg: &MatrixLieAlgebra) -> ExactMatrix {
    let b = alg.basis();
    ExactMatrix::from_fn(b.len(), b.len(), |i, j| (&b[i] * &b[j]).trace())
}

/// Index of the unordered pair `{i, j}` in the upper-triangle enumeration.
fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * dim - i * (i + 1) / 2 + j
}

/// Basis of the symmetric bilinear forms `Q` with
/// `Q([c,a],b) + Q(a,[c,b]) = 0` for all basis triples.
///
/// Unknowns are the upper-triangle entries `Q_ij`, `i ≤ j`; for each `c` the
/// invariance equations form a square operator on that space.
pub fn invariant_symmetric_forms(alg: &MatrixLieAlgebra) -> Vec<ExactMatrix> {
    let c = alg.structure_constants();
    let d = c.dim();
    let n = d * (d + 1) / 2;
    let ops: Vec<SparseOperator> = (0..d)
        .map(|x| {
            let mut op = SparseOperator::new(n);
            for a in 0..d {
                for b in a..d {
                    let row = pair_index(d, a, b);
                    // Q([x,a], b) = Σ_k c^k_{xa} Q_kb, Q(a, [x,b]) = Σ_k c^k_{xb} Q_ak
                    for k in 0..d {
                        let ca = c.get(x, a, k);
                        if !ca.is_zero() {
                            op.add_entry(row, pair_index(d, k, b), ca);
                        }
                        let cb = c.get(x, b, k);
                        if !cb.is_zero() {
                            op.add_entry(row, pair_index(d, a, k), cb);
                        }
                    }
                }
            }
            op
        })
        .collect();
    joint_kernel(&ops, n)
        .into_iter()
        .map(|v| ExactMatrix::from_fn(d, d, |i, j| v[pair_index(d, i, j)].clone()))
        .collect()
}
