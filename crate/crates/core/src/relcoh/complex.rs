use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::exact::{joint_kernel, ExactMatrix, ExactScalar, SparseOperator};

use super::{ReductivePair, RelcohError};

/// Largest `dim Λ^q 𝔭` attempted.
pub const DEFAULT_WEDGE_CEILING: usize = 20_000;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn subsets(n: usize, q: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, q: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, q, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, q, 0, &mut Vec::new(), &mut out);
    out
}

/// Sorts `v` and returns the permutation sign, or `None` on a repeated index.
fn sort_with_sign(mut v: Vec<usize>) -> Option<(Vec<usize>, i64)> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some((v, sign))
}

/// Monomial basis of `Λ^q 𝔭*` with an index lookup.
struct Wedge {
    monos: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Wedge {
    fn new(p: usize, q: usize, ceiling: usize) -> Result<Self, RelcohError> {
        let size = binomial(p, q);
        if size > ceiling {
            return Err(RelcohError::TooLarge { q, size, ceiling });
        }
        let monos = subsets(p, q);
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(Wedge { monos, index })
    }

    fn len(&self) -> usize {
        self.monos.len()
    }
}

/// `𝔨`-action on `Λ^q 𝔭*`: `x · φ^j = −Σ_m c^{p_j}_{x, p_m} φ^m`, extended
/// as a derivation.
fn k_action(pair: &ReductivePair, wedge: &Wedge) -> Vec<SparseOperator> {
    let c = pair.adapted_constants();
    let r = pair.k_dim();
    let s = pair.p_dim();
    (0..r)
        .map(|x| {
            let mut op = SparseOperator::new(wedge.len());
            for (col, mono) in wedge.monos.iter().enumerate() {
                for (i, &j) in mono.iter().enumerate() {
                    for m in 0..s {
                        let coef = c.get(x, r + m, r + j);
                        if coef.is_zero() {
                            continue;
                        }
                        let mut image = mono.clone();
                        image[i] = m;
                        if let Some((sorted, sign)) = sort_with_sign(image) {
                            op.add_entry(wedge.index[&sorted], col, &(-coef * &ExactScalar::from_int(sign)));
                        }
                    }
                }
            }
            op
        })
        .collect()
}

/// Basis of `(Λ^q 𝔭*)^𝔨` as coordinate vectors in the monomial basis.
pub fn invariant_wedge_basis(pair: &ReductivePair, q: usize, ceiling: usize) -> Result<Vec<Vec<ExactScalar>>, RelcohError> {
    if q > pair.p_dim() {
        return Err(RelcohError::Degree { q, dim: pair.p_dim() });
    }
    let wedge = Wedge::new(pair.p_dim(), q, ceiling)?;
    Ok(joint_kernel(&k_action(pair, &wedge), wedge.len()))
}

pub fn invariant_wedge_dimension(pair: &ReductivePair, q: usize) -> Result<usize, RelcohError> {
    Ok(invariant_wedge_basis(pair, q, DEFAULT_WEDGE_CEILING)?.len())
}

/// `d φ^J` in `Λ^{q+1}`, with `dφ^m = −Σ_{a<b} c^{p_m}_{p_a p_b} φ^a ∧ φ^b`.
fn differential_of_monomial(pair: &ReductivePair, mono: &[usize], target: &Wedge) -> Vec<(usize, ExactScalar)> {
    let c = pair.adapted_constants();
    let r = pair.k_dim();
    let s = pair.p_dim();
    let mut out: HashMap<usize, ExactScalar> = HashMap::new();
    for (i, &m) in mono.iter().enumerate() {
        let pos_sign: i64 = if i % 2 == 0 { 1 } else { -1 };
        for a in 0..s {
            for b in (a + 1)..s {
                let coef = c.get(r + a, r + b, r + m);
                if coef.is_zero() {
                    continue;
                }
                let seq: Vec<usize> = mono[..i].iter().copied().chain([a, b]).chain(mono[i + 1..].iter().copied()).collect();
                if let Some((sorted, sign)) = sort_with_sign(seq) {
                    let v = -coef * &ExactScalar::from_int(pos_sign * sign);
                    *out.entry(target.index[&sorted]).or_insert_with(ExactScalar::zero) += &v;
                }
            }
        }
    }
    let mut v: Vec<_> = out.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    v.sort_by_key(|(i, _)| *i);
    v
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyReport {
    pub betti: Vec<usize>,
    /// `dim (Λ^q 𝔭*)^𝔨` per degree.
    pub cochain_dims: Vec<usize>,
    /// Whether the relative differential is the zero map in every degree.
    pub differential_zero: bool,
    pub symmetric: bool,
}

/// Betti numbers `b_q = dim C^q − rank d_q − rank d_{q−1}` of the
/// `𝔨`-invariant relative complex.
pub fn relative_ce_cohomology(pair: &ReductivePair, ceiling: usize) -> Result<CohomologyReport, RelcohError> {
    let s = pair.p_dim();
    let wedges: Vec<Wedge> = (0..=s).map(|q| Wedge::new(s, q, ceiling)).collect::<Result<_, _>>()?;
    let bases: Vec<Vec<Vec<ExactScalar>>> = wedges
        .iter()
        .map(|w| joint_kernel(&k_action(pair, w), w.len()))
        .collect();
    let mut ranks = vec![0usize; s + 1];
    let mut differential_zero = true;
    for q in 0..s {
        if bases[q].is_empty() {
            continue;
        }
        let mut cache: HashMap<usize, Vec<(usize, ExactScalar)>> = HashMap::new();
        let mut images = Vec::with_capacity(bases[q].len());
        for v in &bases[q] {
            let mut img = vec![ExactScalar::zero(); wedges[q + 1].len()];
            for (j, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let dj = cache
                    .entry(j)
                    .or_insert_with(|| differential_of_monomial(pair, &wedges[q].monos[j], &wedges[q + 1]));
                for (t, c) in dj.iter() {
                    img[*t] += &(x * c);
                }
            }
            images.push(img);
        }
        let m = ExactMatrix::from_fn(images.len(), wedges[q + 1].len(), |i, j| images[i][j].clone());
        differential_zero &= m.is_zero();
        ranks[q] = m.rank();
    }
    let betti = (0..=s)
        .map(|q| bases[q].len() - ranks[q] - if q > 0 { ranks[q - 1] } else { 0 })
        .collect();
    Ok(CohomologyReport {
        betti,
        cochain_dims: bases.iter().map(Vec::len).collect(),
        differential_zero,
        symmetric: pair.is_symmetric(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{Family, MatrixLieAlgebra};
    use crate::relcoh::cartan_complement;

    fn pair(g: &str, k: Option<&str>) -> ReductivePair {
        let g = MatrixLieAlgebra::from_spec(g).unwrap();
        let k = k.map_or_else(|| MatrixLieAlgebra::zero(g.matrix_size()), |k| MatrixLieAlgebra::from_spec(k).unwrap());
        cartan_complement(&g, &k).unwrap()
    }

    #[test]
    fn sort_signs() {
        assert_eq!(sort_with_sign(vec![2, 0, 1]), Some((vec![0, 1, 2], 1)));
        assert_eq!(sort_with_sign(vec![1, 0]), Some((vec![0, 1], -1)));
        assert_eq!(sort_with_sign(vec![1, 0, 1]), None);
    }

    #[test]
    fn sl2_so2() {
        let p = pair("sl2", Some("so2"));
        let dims: Vec<_> = (0..=2).map(|q| invariant_wedge_dimension(&p, q).unwrap()).collect();
        assert_eq!(dims, vec![1, 0, 1]);
        let r = relative_ce_cohomology(&p, DEFAULT_WEDGE_CEILING).unwrap();
        assert_eq!(r.betti, vec![1, 0, 1]);
        assert!(r.differential_zero && r.symmetric);
    }

    #[test]
    fn sl3_so3() {
        let p = pair("sl3", Some("so3"));
        let r = relative_ce_cohomology(&p, DEFAULT_WEDGE_CEILING).unwrap();
        assert_eq!(r.cochain_dims, vec![1, 0, 0, 0, 0, 1]);
        assert_eq!(r.betti, vec![1, 0, 0, 0, 0, 1]);
        assert!(r.differential_zero);
    }

    #[test]
    fn su2_plain() {
        let p = pair("su2", None);
        let r = relative_ce_cohomology(&p, DEFAULT_WEDGE_CEILING).unwrap();
        assert_eq!(r.betti, vec![1, 0, 0, 1]);
        assert!(!r.differential_zero);
    }

    #[test]
    fn abelian_plain_is_exterior() {
        let gl1 = MatrixLieAlgebra::classical(Family::Gl, 1).unwrap();
        let p = cartan_complement(&gl1, &MatrixLieAlgebra::zero(1));
        // gl(1) has a zero Killing form, but the zero subalgebra needs no check
        let r = relative_ce_cohomology(&p.unwrap(), DEFAULT_WEDGE_CEILING).unwrap();
        assert_eq!(r.betti, vec![1, 1]);
    }

    #[test]
    fn guards() {
        let p = pair("sl3", Some("so3"));
        assert!(matches!(invariant_wedge_basis(&p, 6, 100), Err(RelcohError::Degree { .. })));
        assert!(matches!(invariant_wedge_basis(&p, 2, 5), Err(RelcohError::TooLarge { size: 10, .. })));
    }
}
