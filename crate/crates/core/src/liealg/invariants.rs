use std::collections::HashMap;

use num_traits::Zero;

use crate::exact::{joint_kernel, SparseOperator};

use super::{LieError, MatrixLieAlgebra};

/// Largest `dim Sym^d(𝔤*)` attempted by [`invariant_polynomial_dimension`].
pub const DEFAULT_SYMMETRIC_CEILING: usize = 5000;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Non-decreasing index sequences of length `degree` over `0..dim`.
fn monomials(dim: usize, degree: usize) -> Vec<Vec<usize>> {
    fn rec(dim: usize, degree: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == degree {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(dim, degree, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, degree, 0, &mut Vec::with_capacity(degree), &mut out);
    out
}

/// Derivation action of every basis element on `Sym^degree(𝔤*)` in the
/// monomial basis of the dual basis `φ^k`, with `e_c · φ^k = −Σ_b c^k_{cb} φ^b`.
pub fn symmetric_power_action(
    alg: &MatrixLieAlgebra,
    degree: usize,
    ceiling: usize,
) -> Result<(Vec<Vec<usize>>, Vec<SparseOperator>), LieError> {
    let c = alg.structure_constants();
    let dim = c.dim();
    let size = binomial(dim + degree - 1, degree);
    if degree > 0 && size > ceiling {
        return Err(LieError::TooLarge { what: format!("Sym^{degree}({})*", alg.name()), size, ceiling });
    }
    let monos = monomials(dim, degree);
    let index: HashMap<&[usize], usize> = monos.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let ops = (0..dim)
        .map(|x| {
            let mut op = SparseOperator::new(monos.len());
            for (col, mono) in monos.iter().enumerate() {
                for pos in 0..mono.len() {
                    if pos > 0 && mono[pos] == mono[pos - 1] {
                        continue;
                    }
                    // multiplicity of the repeated factor
                    let mult = mono.iter().filter(|&&v| v == mono[pos]).count() as i64;
                    let k = mono[pos];
                    for b in 0..dim {
                        let coef = c.get(x, b, k);
                        if coef.is_zero() {
                            continue;
                        }
                        let mut image = mono.clone();
                        image[pos] = b;
                        image.sort_unstable();
                        let row = index[image.as_slice()];
                        op.add_entry(row, col, &(-coef * crate::exact::ExactScalar::from_int(mult)));
                    }
                }
            }
            op
        })
        .collect();
    Ok((monos, ops))
}

/// `dim (Sym^degree 𝔤*)^𝔤`: the joint kernel of all basis derivations.
pub fn invariant_polynomial_dimension(alg: &MatrixLieAlgebra, degree: usize, ceiling: usize) -> Result<usize, LieError> {
    let (monos, ops) = symmetric_power_action(alg, degree, ceiling)?;
    Ok(joint_kernel(&ops, monos.len()).len())
}
