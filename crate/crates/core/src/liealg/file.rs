//! JSON description of a matrix Lie algebra:
//!
//! ```json
//! { "name": "sl(2)", "matrix_size": 2, "scalar": "rational",
//!   "basis": [["1","0","0","-1"], ["0","1","0","0"], ["0","0","1","0"]] }
//! ```
//!
//! Rationals are strings `"p/q"` or `"p"` (plain JSON integers are accepted
//! too); Gaussian rationals are pairs `["p/q", "r/s"]` meaning `a + bi`.

use serde::{Deserialize, Serialize};

use crate::exact::{ExactMatrix, ExactScalar};

use super::{LieError, MatrixLieAlgebra, ScalarKind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarLiteral {
    Int(i64),
    Rational(String),
    Gaussian([String; 2]),
}

impl ScalarLiteral {
    pub fn to_scalar(&self) -> Result<ExactScalar, LieError> {
        Ok(match self {
            ScalarLiteral::Int(n) => ExactScalar::from_int(*n),
            ScalarLiteral::Rational(s) => s.parse()?,
            ScalarLiteral::Gaussian([re, im]) => {
                ExactScalar::new(ExactScalar::parse_rational(re)?, ExactScalar::parse_rational(im)?)
            }
        })
    }

    pub fn from_scalar(x: &ExactScalar) -> Self {
        if x.is_real() {
            ScalarLiteral::Rational(ExactScalar::rational_string(x.re()))
        } else {
            ScalarLiteral::Gaussian([ExactScalar::rational_string(x.re()), ExactScalar::rational_string(x.im())])
        }
    }
}

/// One element of a matrix literal: a scalar, or a list (a row, or a
/// Gaussian pair).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LiteralNode {
    Int(i64),
    Str(String),
    List(Vec<ScalarLiteral>),
}

/// A square matrix written either as a flat row-major list or as rows. The
/// shape is decided by the expected size, since a row of two rationals and
/// a Gaussian pair look the same in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixLiteral(pub Vec<LiteralNode>);

impl LiteralNode {
    fn as_scalar(&self) -> Option<ScalarLiteral> {
        match self {
            LiteralNode::Int(n) => Some(ScalarLiteral::Int(*n)),
            LiteralNode::Str(s) => Some(ScalarLiteral::Rational(s.clone())),
            LiteralNode::List(v) => match v.as_slice() {
                [ScalarLiteral::Rational(a), ScalarLiteral::Rational(b)] => {
                    Some(ScalarLiteral::Gaussian([a.clone(), b.clone()]))
                }
                _ => None,
            },
        }
    }
}

impl MatrixLiteral {
    pub fn to_matrix(&self, size: usize) -> Result<ExactMatrix, LieError> {
        let nodes = &self.0;
        let flat: Option<Vec<ScalarLiteral>> = (nodes.len() == size * size)
            .then(|| nodes.iter().map(LiteralNode::as_scalar).collect())
            .flatten();
        let entries = match flat {
            Some(v) => v,
            None if nodes.len() == size => {
                let mut v = Vec::with_capacity(size * size);
                for (i, node) in nodes.iter().enumerate() {
                    match node {
                        LiteralNode::List(row) if row.len() == size => v.extend(row.iter().cloned()),
                        LiteralNode::List(row) => {
                            return Err(LieError::Invalid(format!(
                                "row {i} has {} entries, expected {size}",
                                row.len()
                            )))
                        }
                        _ => return Err(LieError::Invalid(format!("row {i} is not a list"))),
                    }
                }
                v
            }
            None => {
                return Err(LieError::Invalid(format!(
                    "{} entries for a {size}x{size} matrix",
                    nodes.len()
                )))
            }
        };
        let data = entries.iter().map(ScalarLiteral::to_scalar).collect::<Result<_, _>>()?;
        Ok(ExactMatrix::from_vec(size, size, data)?)
    }

    pub fn from_matrix(m: &ExactMatrix) -> Self {
        MatrixLiteral(
            m.entries()
                .iter()
                .map(|x| match ScalarLiteral::from_scalar(x) {
                    ScalarLiteral::Int(n) => LiteralNode::Int(n),
                    ScalarLiteral::Rational(s) => LiteralNode::Str(s),
                    ScalarLiteral::Gaussian([a, b]) => {
                        LiteralNode::List(vec![ScalarLiteral::Rational(a), ScalarLiteral::Rational(b)])
                    }
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub matrix_size: usize,
    pub scalar: ScalarKind,
    pub basis: Vec<MatrixLiteral>,
}

impl AlgebraFile {
    pub fn build(&self) -> Result<MatrixLieAlgebra, LieError> {
        let basis = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, m)| {
                m.to_matrix(self.matrix_size)
                    .map_err(|e| LieError::Invalid(format!("basis[{i}]: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut alg = MatrixLieAlgebra::new(self.name.clone(), self.scalar, basis)?;
        alg.matrix_size = self.matrix_size;
        Ok(alg)
    }

    pub fn describe(alg: &MatrixLieAlgebra) -> Self {
        AlgebraFile {
            name: alg.name().to_string(),
            matrix_size: alg.matrix_size(),
            scalar: alg.scalar(),
            basis: alg.basis().iter().map(MatrixLiteral::from_matrix).collect(),
        }
    }
}
