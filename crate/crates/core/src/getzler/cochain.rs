use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::action::GroupAction;
use super::field::{Field, SqMat};
use super::polyform::PolyForm;
use super::GetzlerError;

type Evaluator<T> = dyn Fn(&[SqMat<T>]) -> Result<PolyForm<T>, GetzlerError> + Send + Sync;

/// `f(g_1, …, g_k | X)` with values in polynomial forms, `X` symbolic
/// through the `Ω^a`.
#[derive(Clone)]
pub struct EquivariantCochain<T> {
    arity: usize,
    poly_degree: Option<usize>,
    eval: Arc<Evaluator<T>>,
}

impl<T> fmt::Debug for EquivariantCochain<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EquivariantCochain")
            .field("arity", &self.arity)
            .field("poly_degree", &self.poly_degree)
            .finish_non_exhaustive()
    }
}

impl<T: Field> EquivariantCochain<T> {
    /// The evaluator must be pure and vanish when any argument is the
    /// identity.
    pub fn new(
        arity: usize,
        poly_degree: Option<usize>,
        eval: impl Fn(&[SqMat<T>]) -> Result<PolyForm<T>, GetzlerError> + Send + Sync + 'static,
    ) -> Self {
        EquivariantCochain { arity, poly_degree, eval: Arc::new(eval) }
    }

    /// 0-cochain with a fixed value.
    pub fn constant(value: PolyForm<T>) -> Self {
        let degree = value.degree();
        Self::new(0, degree, move |_| Ok(value.clone()))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `2·|Ω| + |dx|` of the values.
    pub fn poly_degree(&self) -> Option<usize> {
        self.poly_degree
    }

    /// `k + l`.
    pub fn total_degree(&self) -> Option<usize> {
        self.poly_degree.map(|l| l + self.arity)
    }

    pub fn evaluate(&self, args: &[SqMat<T>]) -> Result<PolyForm<T>, GetzlerError> {
        if args.len() != self.arity {
            return Err(GetzlerError::Arity { expected: self.arity, got: args.len() });
        }
        (self.eval)(args)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, GetzlerError> {
        if self.arity != rhs.arity {
            return Err(GetzlerError::Arity { expected: self.arity, got: rhs.arity });
        }
        let degree = if self.poly_degree == rhs.poly_degree { self.poly_degree } else { None };
        let (a, b) = (self.clone(), rhs.clone());
        Ok(Self::new(self.arity, degree, move |g| Ok(a.evaluate(g)?.add(&b.evaluate(g)?))))
    }

    pub fn scale(&self, s: T) -> Self {
        let a = self.clone();
        Self::new(self.arity, self.poly_degree, move |g| Ok(a.evaluate(g)?.scale(&s)))
    }
}

fn sign<T: Field>(k: usize) -> T {
    if k % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// `(df)(g | X) = (−1)^k d f(g | X)`.
pub fn op_d<T: Field>(f: &EquivariantCochain<T>) -> EquivariantCochain<T> {
    let f = f.clone();
    let s: T = sign(f.arity);
    EquivariantCochain::new(f.arity, f.poly_degree.map(|l| l + 1), move |g| {
        Ok(f.evaluate(g)?.exterior_d().scale(&s))
    })
}

/// `(ιf)(g | X) = (−1)^k ι(X) f(g | X)`.
pub fn op_iota<T: Field>(action: &Arc<GroupAction<T>>, f: &EquivariantCochain<T>) -> EquivariantCochain<T> {
    let f = f.clone();
    let field = action.fundamental_field();
    let s: T = sign(f.arity);
    EquivariantCochain::new(f.arity, f.poly_degree.map(|l| l + 1), move |g| {
        Ok(f.evaluate(g)?.contract(&field).scale(&s))
    })
}

/// Group coboundary with the right action `ρ` in the last term:
/// `f(g_1..g_k) + Σ_{i=1}^k (−1)^i f(.., g_{i−1}g_i, ..) + (−1)^{k+1} ρ(g_k) f(g_0..g_{k−1})`.
pub fn op_dbar<T: Field>(action: &Arc<GroupAction<T>>, f: &EquivariantCochain<T>) -> EquivariantCochain<T> {
    let f = f.clone();
    let action = Arc::clone(action);
    let k = f.arity;
    EquivariantCochain::new(k + 1, f.poly_degree, move |g| {
        if g.len() != k + 1 {
            return Err(GetzlerError::Arity { expected: k + 1, got: g.len() });
        }
        let mut out = f.evaluate(&g[1..])?;
        for i in 1..=k {
            let mut args: Vec<SqMat<T>> = Vec::with_capacity(k);
            args.extend_from_slice(&g[..i - 1]);
            args.push(g[i - 1].mul(&g[i]));
            args.extend_from_slice(&g[i + 1..]);
            out = out.add(&f.evaluate(&args)?.scale(&sign(i)));
        }
        let last = action.rho(&g[k], &f.evaluate(&g[..k])?)?;
        Ok(out.add(&last.scale(&sign(k + 1))))
    })
}

/// Contraction `Σ_{i=0}^{k−1} (−1)^i ∂_t f(g_1..g_i, e^{tX_i}, g_{i+1}..g_{k−1})` with
/// `X_i = Ad(g_{i+1}⋯g_{k−1})X`, the derivative taken by central differences
/// of size `step` along each basis direction.
pub fn op_ibar<T: Field>(
    action: &Arc<GroupAction<T>>,
    f: &EquivariantCochain<T>,
    step: T,
) -> Result<EquivariantCochain<T>, GetzlerError> {
    let k = f.arity;
    if k == 0 {
        return Err(GetzlerError::ZeroArity);
    }
    let dim = action.g_dim();
    let mut shifts = Vec::with_capacity(dim);
    for e in action.basis() {
        let plus = T::exp(&e.scale(&step)).ok_or(GetzlerError::NoExponential)?;
        let minus = T::exp(&e.scale(&-step.clone())).ok_or(GetzlerError::NoExponential)?;
        shifts.push((plus, minus));
    }
    let half = T::one() / (step.clone() + step);
    let f = f.clone();
    let action = Arc::clone(action);
    Ok(EquivariantCochain::new(k - 1, f.poly_degree.map(|l| l + 2), move |g| {
        if g.len() != k - 1 {
            return Err(GetzlerError::Arity { expected: k - 1, got: g.len() });
        }
        let mut out = action.zero_form();
        let mut h = SqMat::identity(action.matrix_size());
        for i in (0..k).rev() {
            // h = g_{i+1} ⋯ g_{k−1} with 1-based labels
            if i < k - 1 {
                h = g[i].mul(&h);
            }
            let coeffs = action.transported_argument(&h)?;
            let mut term = action.zero_form();
            for (c, (plus, minus)) in shifts.iter().enumerate() {
                if coeffs[c].is_zero() {
                    continue;
                }
                let with = |m: &SqMat<T>| {
                    let mut args = Vec::with_capacity(k);
                    args.extend_from_slice(&g[..i]);
                    args.push(m.clone());
                    args.extend_from_slice(&g[i..]);
                    f.evaluate(&args)
                };
                let diff = with(plus)?.sub(&with(minus)?).scale(&half);
                term = term.add(&coeffs[c].mul(&diff));
            }
            out = out.add(&term.scale(&sign(i)));
        }
        Ok(out)
    }))
}

/// Finite sum of cochains of different arities, at most one per arity.
#[derive(Clone, Debug)]
pub struct CochainSum<T> {
    parts: BTreeMap<usize, EquivariantCochain<T>>,
}

impl<T: Field> CochainSum<T> {
    pub fn zero() -> Self {
        CochainSum { parts: BTreeMap::new() }
    }

    pub fn single(f: EquivariantCochain<T>) -> Self {
        let mut s = Self::zero();
        s.push(f).expect("empty sum");
        s
    }

    pub fn push(&mut self, f: EquivariantCochain<T>) -> Result<(), GetzlerError> {
        let merged = match self.parts.remove(&f.arity) {
            Some(old) => old.add(&f)?,
            None => f,
        };
        self.parts.insert(merged.arity, merged);
        Ok(())
    }

    pub fn parts(&self) -> impl Iterator<Item = &EquivariantCochain<T>> {
        self.parts.values()
    }

    pub fn part(&self, arity: usize) -> Option<&EquivariantCochain<T>> {
        self.parts.get(&arity)
    }

    pub fn arities(&self) -> Vec<usize> {
        self.parts.keys().copied().collect()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, GetzlerError> {
        let mut out = self.clone();
        for p in rhs.parts() {
            out.push(p.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: T) -> Self {
        CochainSum { parts: self.parts.iter().map(|(&k, p)| (k, p.scale(s.clone()))).collect() }
    }

    /// The common `k + l` of every part, if there is one.
    pub fn total_degree(&self) -> Option<usize> {
        let mut degs = self.parts().map(EquivariantCochain::total_degree);
        let first = degs.next()??;
        degs.all(|d| d == Some(first)).then_some(first)
    }
}

/// Getzler operators bound to one action and one difference step.
#[derive(Clone, Debug)]
pub struct GetzlerOperators<T> {
    action: Arc<GroupAction<T>>,
    step: T,
}

impl<T: Field> GetzlerOperators<T> {
    pub fn new(action: GroupAction<T>, step: T) -> Self {
        GetzlerOperators { action: Arc::new(action), step }
    }

    pub fn action(&self) -> &Arc<GroupAction<T>> {
        &self.action
    }

    pub fn step(&self) -> &T {
        &self.step
    }

    pub fn d(&self, f: &EquivariantCochain<T>) -> EquivariantCochain<T> {
        op_d(f)
    }

    pub fn iota(&self, f: &EquivariantCochain<T>) -> EquivariantCochain<T> {
        op_iota(&self.action, f)
    }

    pub fn dbar(&self, f: &EquivariantCochain<T>) -> EquivariantCochain<T> {
        op_dbar(&self.action, f)
    }

    pub fn ibar(&self, f: &EquivariantCochain<T>) -> Result<EquivariantCochain<T>, GetzlerError> {
        op_ibar(&self.action, f, self.step.clone())
    }

    /// `d_G = d + ι + d̄ + ῑ`; `ῑ` is skipped on 0-cochains.
    pub fn total(&self, f: &EquivariantCochain<T>) -> Result<CochainSum<T>, GetzlerError> {
        let mut out = CochainSum::single(self.d(f));
        out.push(self.iota(f))?;
        out.push(self.dbar(f))?;
        if f.arity() > 0 {
            out.push(self.ibar(f)?)?;
        }
        Ok(out)
    }

    pub fn total_sum(&self, f: &CochainSum<T>) -> Result<CochainSum<T>, GetzlerError> {
        let mut out = CochainSum::zero();
        for p in f.parts() {
            out = out.add(&self.total(p)?)?;
        }
        Ok(out)
    }

    /// `(a ∪ b)(g_1..g_{k+l}) = (−1)^{l_b·p_a} ρ(γ)[a(g_1..g_k)] ∧ b(g_{k+1}..g_{k+l})`
    /// with `γ = g_{k+1}⋯g_{k+l}` and `p_a` the polynomial degree of `a`.
    pub fn cup(&self, a: &EquivariantCochain<T>, b: &EquivariantCochain<T>) -> Result<EquivariantCochain<T>, GetzlerError> {
        let pa = a.poly_degree.ok_or(GetzlerError::Inhomogeneous)?;
        let (k, l) = (a.arity, b.arity);
        let s: T = sign(l * pa);
        let (a, b) = (a.clone(), b.clone());
        let action = Arc::clone(&self.action);
        let degree = b.poly_degree.map(|pb| pa + pb);
        Ok(EquivariantCochain::new(k + l, degree, move |g| {
            if g.len() != k + l {
                return Err(GetzlerError::Arity { expected: k + l, got: g.len() });
            }
            let first = a.evaluate(&g[..k])?;
            let moved = if l == 0 {
                first
            } else {
                let gamma = g[k + 1..].iter().fold(g[k].clone(), |acc, x| acc.mul(x));
                action.rho(&gamma, &first)?
            };
            Ok(moved.mul(&b.evaluate(&g[k..])?).scale(&s))
        }))
    }

    pub fn cup_sum(&self, a: &CochainSum<T>, b: &CochainSum<T>) -> Result<CochainSum<T>, GetzlerError> {
        let mut out = CochainSum::zero();
        for x in a.parts() {
            for y in b.parts() {
                out.push(self.cup(x, y)?)?;
            }
        }
        Ok(out)
    }
}
