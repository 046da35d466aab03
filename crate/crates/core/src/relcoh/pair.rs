use num_traits::Zero;

use crate::exact::{ExactMatrix, ExactScalar};
use crate::liealg::{killing_form, MatrixLieAlgebra, StructureConstants};

use super::RelcohError;

/// `𝔤 = 𝔨 ⊕ 𝔭` with `𝔭` the Killing-orthogonal complement of `𝔨`.
///
/// Structure constants are kept in the adapted basis `(k_1, …, k_r, p_1, …, p_s)`.
#[derive(Clone, Debug)]
pub struct ReductivePair {
    g: MatrixLieAlgebra,
    k: MatrixLieAlgebra,
    p_basis: Vec<ExactMatrix>,
    adapted: StructureConstants,
    symmetric: bool,
}

impl ReductivePair {
    pub fn g(&self) -> &MatrixLieAlgebra {
        &self.g
    }

    pub fn k(&self) -> &MatrixLieAlgebra {
        &self.k
    }

    pub fn p_basis(&self) -> &[ExactMatrix] {
        &self.p_basis
    }

    pub fn k_dim(&self) -> usize {
        self.k.dim()
    }

    pub fn p_dim(&self) -> usize {
        self.p_basis.len()
    }

    /// Structure constants in the adapted basis, `𝔨` first.
    pub fn adapted_constants(&self) -> &StructureConstants {
        &self.adapted
    }

    /// `[𝔭, 𝔭] ⊂ 𝔨`.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }
}

/// Builds the pair and verifies `𝔤 = 𝔨 ⊕ 𝔭` and `[𝔨, 𝔭] ⊂ 𝔭`.
pub fn cartan_complement(g: &MatrixLieAlgebra, k: &MatrixLieAlgebra) -> Result<ReductivePair, RelcohError> {
    let dim = g.dim();
    let kc: Vec<Vec<ExactScalar>> = k
        .basis()
        .iter()
        .enumerate()
        .map(|(i, m)| g.coordinates(m).ok_or(RelcohError::NotSubalgebra(i)))
        .collect::<Result<_, _>>()?;
    let b = killing_form(g);
    // rows: (K^T B), one per k-basis element
    let kb = ExactMatrix::from_fn(kc.len(), dim, |i, j| {
        (0..dim).map(|l| &kc[i][l] * &b[(l, j)]).fold(ExactScalar::zero(), |acc, x| acc + x)
    });
    if !kc.is_empty() {
        let restricted = ExactMatrix::from_fn(kc.len(), kc.len(), |i, j| {
            (0..dim).map(|l| &kb[(i, l)] * &kc[j][l]).fold(ExactScalar::zero(), |acc, x| acc + x)
        });
        let rank = restricted.rank();
        if rank < kc.len() {
            return Err(RelcohError::Degenerate { radical: kc.len() - rank });
        }
    }
    let p_coords: Vec<Vec<ExactScalar>> = if kc.is_empty() {
        (0..dim).map(|i| (0..dim).map(|j| ExactScalar::from_int(i64::from(i == j))).collect()).collect()
    } else {
        kb.kernel_basis().into_iter().map(ExactMatrix::into_entries).collect()
    };
    let p_basis: Vec<ExactMatrix> = p_coords.iter().map(|c| g.element(c)).collect();
    let mut adapted_basis = k.basis().to_vec();
    adapted_basis.extend(p_basis.iter().cloned());
    let adapted_alg = MatrixLieAlgebra::new(format!("{} ⊕ p", k.name()), g.scalar(), adapted_basis)?;
    let adapted = adapted_alg.structure_constants().clone();
    let r = k.dim();
    let n = adapted.dim();
    let stable = (0..r).all(|i| (r..n).all(|j| (0..r).all(|l| adapted.get(i, j, l).is_zero())));
    if !stable {
        return Err(RelcohError::NotStable);
    }
    let symmetric = (r..n).all(|i| (r..n).all(|j| (r..n).all(|l| adapted.get(i, j, l).is_zero())));
    Ok(ReductivePair { g: g.clone(), k: k.clone(), p_basis, adapted, symmetric })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::Family;

    #[test]
    fn sl2_so2_complement() {
        let g = MatrixLieAlgebra::classical(Family::Sl, 2).unwrap();
        let k = MatrixLieAlgebra::classical(Family::So, 2).unwrap();
        let pair = cartan_complement(&g, &k).unwrap();
        assert_eq!(pair.p_dim(), 2);
        assert!(pair.is_symmetric());
        for p in pair.p_basis() {
            assert_eq!(p.transpose(), *p);
        }
        let want = [ExactMatrix::from_int_rows(&[&[1, 0], &[0, -1]]), ExactMatrix::from_int_rows(&[&[0, 1], &[1, 0]])];
        for w in &want {
            let mut both = pair.p_basis().to_vec();
            both.push(w.clone());
            assert!(MatrixLieAlgebra::new("x", g.scalar(), both).is_err());
        }
    }

    #[test]
    fn sl3_so3_dimension() {
        let g = MatrixLieAlgebra::classical(Family::Sl, 3).unwrap();
        let k = MatrixLieAlgebra::classical(Family::So, 3).unwrap();
        let pair = cartan_complement(&g, &k).unwrap();
        assert_eq!(pair.p_dim(), 5);
        assert!(pair.is_symmetric());
    }

    #[test]
    fn zero_subalgebra_gives_everything() {
        let g = MatrixLieAlgebra::classical(Family::Sl, 2).unwrap();
        let pair = cartan_complement(&g, &MatrixLieAlgebra::zero(2)).unwrap();
        assert_eq!(pair.p_dim(), 3);
    }

    #[test]
    fn degenerate_restriction() {
        // span{e}: Killing form vanishes on it
        let g = MatrixLieAlgebra::classical(Family::Sl, 2).unwrap();
        let k = MatrixLieAlgebra::new("n", g.scalar(), vec![g.basis()[1].clone()]).unwrap();
        assert_eq!(cartan_complement(&g, &k).unwrap_err(), RelcohError::Degenerate { radical: 1 });
    }

    #[test]
    fn not_contained() {
        let g = MatrixLieAlgebra::classical(Family::Sl, 2).unwrap();
        let k = MatrixLieAlgebra::new("id", g.scalar(), vec![ExactMatrix::identity(2)]).unwrap();
        assert_eq!(cartan_complement(&g, &k).unwrap_err(), RelcohError::NotSubalgebra(0));
    }
}
