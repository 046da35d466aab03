use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::anomaly::{GaugeEmbedding, Side};
use crate::exact::{ExactMatrix, ExactScalar};

use super::expr::{FormExpression, Kind};
use super::word::{word_degree, ConstSym, Letter};
use super::WzwError;

/// Matrices substituted for the constants `T_{a,s}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConstBindings(BTreeMap<ConstSym, ExactMatrix>);

impl ConstBindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, c: ConstSym, m: ExactMatrix) {
        self.0.insert(c, m);
    }

    pub fn get(&self, c: ConstSym) -> Option<&ExactMatrix> {
        self.0.get(&c)
    }

    pub fn from_embedding(emb: &GaugeEmbedding) -> Self {
        let mut out = Self::new();
        for side in [Side::Left, Side::Right] {
            for (index, m) in emb.side(side).iter().enumerate() {
                out.insert(ConstSym { index, side }, m.clone());
            }
        }
        out
    }
}

/// A value with its π-power expansion: `Σ_e value_e · π^e`.
#[derive(Clone, Debug, PartialEq)]
pub enum Evaluation {
    Scalar(BTreeMap<i32, ExactScalar>),
    Matrix(BTreeMap<i32, ExactMatrix>),
}

impl Evaluation {
    pub fn is_zero(&self) -> bool {
        match self {
            Evaluation::Scalar(m) => m.values().all(Zero::is_zero),
            Evaluation::Matrix(m) => m.values().all(ExactMatrix::is_zero),
        }
    }
}

/// Antisymmetrized evaluation: the `i`-th `dg` of a word receives
/// `vectors[σ(i)]`, summed over permutations `σ` with sign. No `1/k!`.
pub fn evaluate(
    x: &FormExpression,
    point: &ExactMatrix,
    vectors: &[ExactMatrix],
    bindings: &ConstBindings,
) -> Result<Evaluation, WzwError> {
    let n = point.rows();
    if !point.is_square() || vectors.iter().any(|v| v.rows() != n || v.cols() != n) {
        return Err(WzwError::Shape);
    }
    let inv = point.inverse().ok_or(WzwError::SingularPoint)?;
    let degrees = x.degrees();
    if degrees.len() > 1 {
        return Err(WzwError::Inhomogeneous(degrees));
    }
    if let Some(&d) = degrees.first() {
        if d != vectors.len() {
            return Err(WzwError::VectorCount { expected: d, found: vectors.len() });
        }
    }
    if vectors.len() > 16 {
        return Err(WzwError::VectorCount { expected: 16, found: vectors.len() });
    }
    let mut scalars: BTreeMap<i32, ExactScalar> = BTreeMap::new();
    let mut matrices: BTreeMap<i32, ExactMatrix> = BTreeMap::new();
    for (c, e, w) in x.terms() {
        let m = eval_word(w, point, &inv, vectors, bindings)?.scale(c);
        match x.kind() {
            Kind::Trace => *scalars.entry(e).or_insert_with(ExactScalar::zero) += m.trace(),
            Kind::Matrix => {
                let slot = matrices.entry(e).or_insert_with(|| ExactMatrix::zeros(n, n));
                *slot = &*slot + &m;
            }
        }
    }
    Ok(match x.kind() {
        Kind::Trace => Evaluation::Scalar(scalars),
        Kind::Matrix => Evaluation::Matrix(matrices),
    })
}

/// Dynamic programme over the set of vectors already used.
fn eval_word(
    w: &[Letter],
    g: &ExactMatrix,
    ginv: &ExactMatrix,
    vectors: &[ExactMatrix],
    bindings: &ConstBindings,
) -> Result<ExactMatrix, WzwError> {
    let n = g.rows();
    let k = vectors.len();
    debug_assert_eq!(word_degree(w), k);
    let mut states: HashMap<u32, ExactMatrix> = HashMap::from([(0, ExactMatrix::identity(n))]);
    for &l in w {
        let fixed = match l {
            Letter::G => Some(g),
            Letter::GInv => Some(ginv),
            Letter::Const(c) => {
                let m = bindings.get(c).ok_or(WzwError::Unbound(c))?;
                if m.rows() != n || !m.is_square() {
                    return Err(WzwError::Shape);
                }
                Some(m)
            }
            Letter::DG => None,
        };
        states = match fixed {
            Some(m) => states.into_iter().map(|(mask, s)| (mask, &s * m)).collect(),
            None => {
                let mut next: HashMap<u32, ExactMatrix> = HashMap::new();
                for (mask, s) in &states {
                    for (j, v) in vectors.iter().enumerate() {
                        if mask & (1 << j) != 0 {
                            continue;
                        }
                        let above = (mask >> (j + 1)).count_ones();
                        let mut term = s * v;
                        if above % 2 == 1 {
                            term = -&term;
                        }
                        let slot = next.entry(mask | (1 << j)).or_insert_with(|| ExactMatrix::zeros(n, n));
                        *slot = &*slot + &term;
                    }
                }
                next
            }
        };
    }
    let full = if k == 0 { 0 } else { (1u32 << k) - 1 };
    Ok(states.remove(&full).unwrap_or_else(|| ExactMatrix::zeros(n, n)))
}
