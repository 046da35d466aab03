use crate::exact::ExactMatrix;
use crate::liealg::MatrixLieAlgebra;

use super::field::{Field, SqMat};
use super::polyform::PolyForm;
use super::GetzlerError;

/// Space the group acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionKind {
    /// `ℝ^n` with the matrices acting by multiplication.
    Defining,
    /// A single point; forms are just `S𝔤*`.
    Point,
}

/// Linear action of a matrix group on `ℝ^m`, together with the float or
/// exact data needed for `Ad`.
#[derive(Clone, Debug)]
pub struct GroupAction<T> {
    name: String,
    n: usize,
    kind: ActionKind,
    basis: Vec<SqMat<T>>,
    pivots: Vec<usize>,
    pivot_inverse: SqMat<T>,
}

impl<T: Field> GroupAction<T> {
    pub fn new(alg: &MatrixLieAlgebra, kind: ActionKind) -> Result<Self, GetzlerError> {
        if alg.basis().iter().any(|b| !b.is_real()) {
            return Err(GetzlerError::NotReal(alg.name().to_string()));
        }
        let n = alg.matrix_size();
        let dim = alg.dim();
        let rows = ExactMatrix::from_fn(dim, n * n, |a, e| alg.basis()[a].entries()[e].clone());
        let pivots = rows.rref().pivot_columns;
        let square = ExactMatrix::from_fn(dim, dim, |i, a| alg.basis()[a].entries()[pivots[i]].clone());
        let inverse = square.inverse().ok_or_else(|| GetzlerError::NotReal(alg.name().to_string()))?;
        Ok(GroupAction {
            name: alg.name().to_string(),
            n,
            kind,
            basis: alg.basis().iter().map(SqMat::from_exact).collect(),
            pivots,
            pivot_inverse: SqMat::from_exact(&inverse),
        })
    }

    /// `ℝ^m` for the defining action when `ambient == n`, a point when
    /// `ambient == 0`.
    pub fn with_ambient(alg: &MatrixLieAlgebra, ambient: usize) -> Result<Self, GetzlerError> {
        let kind = match ambient {
            0 => ActionKind::Point,
            m if m == alg.matrix_size() => ActionKind::Defining,
            m => return Err(GetzlerError::Ambient { ambient: m, matrix_size: alg.matrix_size() }),
        };
        Self::new(alg, kind)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ActionKind {
        self.kind
    }

    pub fn g_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn ambient(&self) -> usize {
        match self.kind {
            ActionKind::Defining => self.n,
            ActionKind::Point => 0,
        }
    }

    pub fn basis(&self) -> &[SqMat<T>] {
        &self.basis
    }

    pub fn zero_form(&self) -> PolyForm<T> {
        PolyForm::zero(self.g_dim(), self.ambient())
    }

    pub fn constant_form(&self, c: T) -> PolyForm<T> {
        PolyForm::constant(self.g_dim(), self.ambient(), c)
    }

    pub fn check_element(&self, g: &SqMat<T>) -> Result<(), GetzlerError> {
        if g.size() == self.n {
            Ok(())
        } else {
            Err(GetzlerError::Shape { expected: self.n, got: g.size() })
        }
    }

    /// Coordinates of an algebra element; only the pivot entries are read.
    pub fn coordinates(&self, m: &SqMat<T>) -> Vec<T> {
        let dim = self.g_dim();
        (0..dim)
            .map(|a| {
                (0..dim).fold(T::zero(), |acc, i| {
                    acc + self.pivot_inverse.get(a, i).clone() * m.entries()[self.pivots[i]].clone()
                })
            })
            .collect()
    }

    /// Matrix of `Ad(g)` in the basis: column `a` holds the coordinates of
    /// `g e_a g⁻¹`.
    pub fn ad(&self, g: &SqMat<T>) -> Result<SqMat<T>, GetzlerError> {
        self.check_element(g)?;
        let inv = g.inverse().ok_or(GetzlerError::Singular)?;
        let cols: Vec<Vec<T>> = self.basis.iter().map(|e| self.coordinates(&g.mul(e).mul(&inv))).collect();
        Ok(SqMat::from_fn(self.g_dim(), |b, a| cols[a][b].clone()))
    }

    /// Images of `Ω^b` under `X ↦ Ad(g)X`: `Σ_a Ad(g)_{ba} Ω^a`.
    pub fn omega_images(&self, ad: &SqMat<T>) -> Vec<PolyForm<T>> {
        let (d, m) = (self.g_dim(), self.ambient());
        (0..d)
            .map(|b| {
                (0..d).fold(PolyForm::zero(d, m), |acc, a| acc.add(&PolyForm::omega(d, m, a).scale(ad.get(b, a))))
            })
            .collect()
    }

    /// `ρ(g)F(X) = L_g^* F(Ad(g)X)`, a right action.
    pub fn rho(&self, g: &SqMat<T>, f: &PolyForm<T>) -> Result<PolyForm<T>, GetzlerError> {
        let ad = self.ad(g)?;
        let (d, m) = (self.g_dim(), self.ambient());
        let linear = |gen: fn(usize, usize, usize) -> PolyForm<T>| -> Vec<PolyForm<T>> {
            (0..m)
                .map(|i| (0..m).fold(PolyForm::zero(d, m), |acc, j| acc.add(&gen(d, m, j).scale(g.get(i, j)))))
                .collect()
        };
        Ok(f.substitute(&linear(PolyForm::x), &linear(PolyForm::dx), &self.omega_images(&ad)))
    }

    /// Components of the fundamental field of the symbolic `X = Σ Ω^a e_a`:
    /// `V(X)(x) = X·x`.
    pub fn fundamental_field(&self) -> Vec<PolyForm<T>> {
        let (d, m) = (self.g_dim(), self.ambient());
        (0..m)
            .map(|i| {
                let mut v = PolyForm::zero(d, m);
                for (a, e) in self.basis.iter().enumerate() {
                    for j in 0..m {
                        if !e.get(i, j).is_zero() {
                            v = v.add(&PolyForm::omega(d, m, a).mul(&PolyForm::x(d, m, j)).scale(e.get(i, j)));
                        }
                    }
                }
                v
            })
            .collect()
    }

    /// `Ad(h)X` written in the basis with `Ω`-linear coefficients.
    pub fn transported_argument(&self, h: &SqMat<T>) -> Result<Vec<PolyForm<T>>, GetzlerError> {
        Ok(self.omega_images(&self.ad(h)?))
    }
}
