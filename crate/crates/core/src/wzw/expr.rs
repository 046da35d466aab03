use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::ExactScalar;

use super::word::{canonical_trace, free_reduce, word_degree, ConstSym, Letter};
use super::WzwError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// Matrix-valued forms.
    Matrix,
    /// Traces of matrix-valued forms.
    Trace,
}

/// Term key: power of π and the letter sequence.
pub type TermKey = (i32, Vec<Letter>);

/// A linear combination of words, each scaled by `coefficient · π^e`.
///
/// Expressions built through the public constructors and operations are
/// normalized; [`FormExpression::raw`] keeps terms exactly as given, which
/// the evaluator accepts as well.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormExpression {
    kind: Kind,
    terms: BTreeMap<TermKey, ExactScalar>,
}

impl FormExpression {
    pub fn zero(kind: Kind) -> Self {
        FormExpression { kind, terms: BTreeMap::new() }
    }

    /// The matrix word with coefficient 1.
    pub fn word(letters: &[Letter]) -> Self {
        Self::raw(Kind::Matrix, [(ExactScalar::one(), 0, letters.to_vec())]).normalize()
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(&[l])
    }

    pub fn constant(c: ConstSym) -> Self {
        Self::letter(Letter::Const(c))
    }

    /// The identity matrix.
    pub fn identity() -> Self {
        Self::word(&[])
    }

    /// Terms `(coefficient, π exponent, letters)` without normalization.
    pub fn raw(kind: Kind, terms: impl IntoIterator<Item = (ExactScalar, i32, Vec<Letter>)>) -> Self {
        let mut out = Self::zero(kind);
        for (c, e, w) in terms {
            out.add_term((e, w), &c);
        }
        out
    }

    fn add_term(&mut self, key: TermKey, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coefficient, π exponent, letters)` in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExactScalar, i32, &[Letter])> {
        self.terms.iter().map(|((e, w), c)| (c, *e, w.as_slice()))
    }

    /// Form degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|(_, w)| word_degree(w)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The common form degree, if the expression is homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// True when no term contains `g`, `g⁻¹` or `dg`.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|(_, w)| w.iter().all(|l| matches!(l, Letter::Const(_))))
    }

    /// Terms whose letter sequence satisfies `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&[Letter]) -> bool) -> Self {
        let terms = self.terms.iter().filter(|((_, w), _)| keep(w)).map(|(k, c)| (k.clone(), c.clone())).collect();
        FormExpression { kind: self.kind, terms }
    }

    /// Free reduction; for traces also cyclic canonical form. Idempotent.
    pub fn normalize(&self) -> Self {
        let mut out = Self::zero(self.kind);
        for ((e, w), c) in &self.terms {
            match self.kind {
                Kind::Matrix => out.add_term((*e, free_reduce(w)), c),
                Kind::Trace => {
                    if let Some((w, s)) = canonical_trace(w) {
                        let c = if s < 0 { -c } else { c.clone() };
                        out.add_term((*e, w), &c);
                    }
                }
            }
        }
        out
    }

    /// `coefficient · π^pi_power · self`.
    pub fn scale(&self, coefficient: &ExactScalar, pi_power: i32) -> Self {
        let mut out = Self::zero(self.kind);
        for ((e, w), c) in &self.terms {
            out.add_term((e + pi_power, w.clone()), &(c * coefficient));
        }
        out
    }

    /// Product of matrix-valued expressions.
    pub fn mul(&self, rhs: &Self) -> Result<Self, WzwError> {
        if self.kind != Kind::Matrix || rhs.kind != Kind::Matrix {
            return Err(WzwError::TraceProduct);
        }
        let mut out = Self::zero(Kind::Matrix);
        for ((e1, w1), c1) in &self.terms {
            for ((e2, w2), c2) in &rhs.terms {
                let w: Vec<Letter> = w1.iter().chain(w2).copied().collect();
                out.add_term((e1 + e2, w), &(c1 * c2));
            }
        }
        Ok(out.normalize())
    }

    /// `self^k` for a matrix-valued expression.
    pub fn pow(&self, k: usize) -> Result<Self, WzwError> {
        (0..k).try_fold(Self::identity(), |acc, _| acc.mul(self))
    }

    pub fn trace(&self) -> Result<Self, WzwError> {
        if self.kind != Kind::Matrix {
            return Err(WzwError::TraceProduct);
        }
        Ok(FormExpression { kind: Kind::Trace, terms: self.terms.clone() }.normalize())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, WzwError> {
        if self.kind != rhs.kind {
            return Err(WzwError::KindMismatch);
        }
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out.normalize())
    }

    /// Applies a per-letter rule that maps a letter to a degree-shifted
    /// expression, extended as a graded derivation: the sign is
    /// `(−1)^{degree of the prefix}` when `odd` is set.
    fn derivation(&self, odd: bool, rule: impl Fn(Letter) -> Vec<(i64, Vec<Letter>)>) -> Self {
        let mut out = Self::zero(self.kind);
        for ((e, w), c) in &self.terms {
            let mut prefix_deg = 0;
            for (i, &l) in w.iter().enumerate() {
                let sign: i64 = if odd && prefix_deg % 2 == 1 { -1 } else { 1 };
                for (s, rep) in rule(l) {
                    let nw: Vec<Letter> = w[..i].iter().chain(&rep).chain(&w[i + 1..]).copied().collect();
                    out.add_term((*e, nw), &(c * &ExactScalar::from_int(sign * s)));
                }
                prefix_deg += l.degree();
            }
        }
        out.normalize()
    }

    /// Exterior derivative: `d g = dg`, `d g⁻¹ = −g⁻¹ dg g⁻¹`, constants closed.
    pub fn differential(&self) -> Self {
        self.derivation(true, |l| match l {
            Letter::G => vec![(1, vec![Letter::DG])],
            Letter::GInv => vec![(-1, vec![Letter::GInv, Letter::DG, Letter::GInv])],
            _ => vec![],
        })
    }

    /// Contraction with `X_a`, where `ι_a dg = T_{a,L} g − g T_{a,R}`.
    pub fn contract(&self, a: usize) -> Self {
        let l = Letter::Const(ConstSym::left(a));
        let r = Letter::Const(ConstSym::right(a));
        self.derivation(true, |x| match x {
            Letter::DG => vec![(1, vec![l, Letter::G]), (-1, vec![Letter::G, r])],
            _ => vec![],
        })
    }

    /// `ℒ_b = d ι_b + ι_b d`.
    pub fn lie_derivative(&self, b: usize) -> Self {
        (&self.contract(b).differential() + &self.differential().contract(b)).normalize()
    }
}

impl Add for &FormExpression {
    type Output = FormExpression;

    /// Panics on mixing matrix and trace expressions.
    fn add(self, rhs: &FormExpression) -> FormExpression {
        self.try_add(rhs).expect("adding expressions of different kinds")
    }
}

impl Sub for &FormExpression {
    type Output = FormExpression;

    fn sub(self, rhs: &FormExpression) -> FormExpression {
        self + &(-rhs)
    }
}

impl Neg for &FormExpression {
    type Output = FormExpression;

    fn neg(self) -> FormExpression {
        self.scale(&-ExactScalar::one(), 0)
    }
}

impl fmt::Display for FormExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((e, w), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            if *e != 0 {
                write!(f, "·π^{e}")?;
            }
            let body = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(Letter::to_string).collect::<Vec<_>>().join(" ")
            };
            match self.kind {
                Kind::Matrix => write!(f, "·[{body}]")?,
                Kind::Trace => write!(f, "·Tr({body})")?,
            }
        }
        Ok(())
    }
}
