//! Matrix Lie algebras over ℚ and ℚ(i).
//!
//! A [`MatrixLieAlgebra`] is a real Lie algebra given by a basis of square
//! matrices. Its structure constants are always rational, even for
//! algebras such as `su(n)` whose matrices have Gaussian entries.

mod file;
mod forms;
mod invariants;
mod structure;

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactError, ExactMatrix, ExactScalar};

pub use file::{AlgebraFile, LiteralNode, MatrixLiteral, ScalarLiteral};
pub use forms::{invariant_symmetric_forms, killing_form, trace_form};
pub use invariants::{invariant_polynomial_dimension, symmetric_power_action, DEFAULT_SYMMETRIC_CEILING};
pub use structure::StructureConstants;

pub(crate) use structure::Coordinates;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("basis matrices must be square and of equal size")]
    BadBasis,
    #[error("basis matrices are linearly dependent")]
    Dependent,
    #[error("[e_{a}, e_{b}] is not in the span of the basis")]
    NotClosed { a: usize, b: usize },
    #[error("scalar kind is rational but basis element {0} has a non-real entry")]
    NotReal(usize),
    #[error("unsupported classical algebra {family}({n})")]
    Unsupported { family: Family, n: usize },
    #[error("resource guard: {what} has dimension {size}, ceiling is {ceiling}")]
    TooLarge { what: String, size: usize, ceiling: usize },
    #[error("invalid algebra description: {0}")]
    Invalid(String),
}

/// Classical families built by [`MatrixLieAlgebra::classical`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sl,
    So,
    Su,
    Gl,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sl => "sl",
            Family::So => "so",
            Family::Su => "su",
            Family::Gl => "gl",
        })
    }
}

impl FromStr for Family {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sl" => Ok(Family::Sl),
            "so" => Ok(Family::So),
            "su" => Ok(Family::Su),
            "gl" => Ok(Family::Gl),
            _ => Err(LieError::Invalid(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Rational,
    Gaussian,
}

#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    name: String,
    matrix_size: usize,
    scalar: ScalarKind,
    basis: Vec<ExactMatrix>,
    constants: StructureConstants,
    coords: Coordinates,
}

impl PartialEq for MatrixLieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.scalar == other.scalar && self.basis == other.basis
    }
}

impl MatrixLieAlgebra {
    /// Validates independence and closure and caches structure constants.
    pub fn new(name: impl Into<String>, scalar: ScalarKind, basis: Vec<ExactMatrix>) -> Result<Self, LieError> {
        let matrix_size = basis.first().map_or(0, ExactMatrix::rows);
        if basis.iter().any(|m| !m.is_square() || m.rows() != matrix_size) {
            return Err(LieError::BadBasis);
        }
        if scalar == ScalarKind::Rational {
            if let Some(i) = basis.iter().position(|m| !m.is_real()) {
                return Err(LieError::NotReal(i));
            }
        }
        let coords = if basis.is_empty() {
            Coordinates::new(&[]).expect("empty basis")
        } else {
            Coordinates::new(&basis).ok_or(LieError::Dependent)?
        };
        let constants = StructureConstants::with_coordinates(&basis, &coords)?;
        Ok(MatrixLieAlgebra { name: name.into(), matrix_size, scalar, basis, constants, coords })
    }

    /// Standard bases with fixed orderings:
    ///
    /// * `sl(2)`: `h, e, f`.
    /// * `sl(n)`, `n ≥ 3`: pairs `(j, k)` in lexicographic order, where
    ///   `j ≠ k` gives `E_jk` and `j = k < n−1` gives `E_jj − E_{j+1,j+1}`.
    /// * `so(n)`: `E_jk − E_kj` for `j < k`, lexicographic.
    /// * `su(n)`: `i(E_jj − E_{j+1,j+1})` for each `j`, then for each `j < k`
    ///   lexicographically `E_jk − E_kj` followed by `i(E_jk + E_kj)`.
    /// * `gl(n)`: `E_jk`, lexicographic.
    pub fn classical(family: Family, n: usize) -> Result<Self, LieError> {
        let min = if family == Family::Gl { 1 } else { 2 };
        if n < min {
            return Err(LieError::Unsupported { family, n });
        }
        let e = |j, k| ExactMatrix::unit(n, j, k);
        let h = |j: usize| &e(j, j) - &e(j + 1, j + 1);
        let i = ExactScalar::i();
        let mut basis = Vec::new();
        let mut scalar = ScalarKind::Rational;
        match family {
            Family::Sl if n == 2 => basis.extend([h(0), e(0, 1), e(1, 0)]),
            Family::Sl => {
                for j in 0..n {
                    for k in 0..n {
                        if j != k {
                            basis.push(e(j, k));
                        } else if j + 1 < n {
                            basis.push(h(j));
                        }
                    }
                }
            }
            Family::So => {
                for j in 0..n {
                    for k in (j + 1)..n {
                        basis.push(&e(j, k) - &e(k, j));
                    }
                }
            }
            Family::Su => {
                scalar = ScalarKind::Gaussian;
                for j in 0..n - 1 {
                    basis.push(h(j).scale(&i));
                }
                for j in 0..n {
                    for k in (j + 1)..n {
                        basis.push(&e(j, k) - &e(k, j));
                        basis.push((&e(j, k) + &e(k, j)).scale(&i));
                    }
                }
            }
            Family::Gl => {
                for j in 0..n {
                    for k in 0..n {
                        basis.push(e(j, k));
                    }
                }
            }
        }
        Self::new(format!("{family}({n})"), scalar, basis)
    }

    /// Parses a classical name such as `sl3`, `sl(3)` or `su2`.
    pub fn from_spec(spec: &str) -> Result<Self, LieError> {
        let s = spec.trim();
        let split = s.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(s.len());
        let (fam, rest) = s.split_at(split);
        let digits = rest.trim_start_matches('(').trim_end_matches(')');
        let n: usize = digits
            .parse()
            .map_err(|_| LieError::Invalid(format!("cannot parse classical algebra {spec:?}")))?;
        Self::classical(fam.to_ascii_lowercase().parse()?, n)
    }

    /// The zero subalgebra of `N×N` matrices.
    pub fn zero(matrix_size: usize) -> Self {
        let mut alg = Self::new("0", ScalarKind::Rational, Vec::new()).expect("empty algebra");
        alg.matrix_size = matrix_size;
        alg
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn matrix_size(&self) -> usize {
        self.matrix_size
    }

    pub fn scalar(&self) -> ScalarKind {
        self.scalar
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ExactMatrix] {
        &self.basis
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.constants
    }

    /// Real coordinates of `m` in the basis, if `m` lies in the algebra.
    pub fn coordinates(&self, m: &ExactMatrix) -> Option<Vec<ExactScalar>> {
        if self.basis.is_empty() {
            return m.is_zero().then(Vec::new);
        }
        self.coords.solve(m)
    }

    /// `Σ_a x_a e_a`.
    pub fn element(&self, coords: &[ExactScalar]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.matrix_size, self.matrix_size);
        for (x, e) in coords.iter().zip(&self.basis) {
            out = &out + &e.scale(x);
        }
        out
    }

    /// True when the basis spans exactly the real traceless `N×N` matrices.
    pub fn is_special_linear(&self) -> bool {
        let n = self.matrix_size;
        n >= 2
            && self.scalar == ScalarKind::Rational
            && self.dim() == n * n - 1
            && self.basis.iter().all(|m| m.trace().is_zero())
    }
}

/// `XY − YX`.
pub fn bracket(x: &ExactMatrix, y: &ExactMatrix) -> Result<ExactMatrix, LieError> {
    if !x.is_square() || !y.is_square() || x.rows() != y.rows() {
        return Err(LieError::BadBasis);
    }
    Ok(x.commutator(y)?)
}
