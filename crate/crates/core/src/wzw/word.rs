use std::fmt;

use crate::anomaly::Side;

/// A constant `T_{index,side}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstSym {
    pub index: usize,
    pub side: Side,
}

impl ConstSym {
    pub fn left(index: usize) -> Self {
        ConstSym { index, side: Side::Left }
    }

    pub fn right(index: usize) -> Self {
        ConstSym { index, side: Side::Right }
    }
}

/// Letters are ordered `G < GInv < DG < Const`; the order fixes which cyclic
/// rotation is canonical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    G,
    GInv,
    DG,
    Const(ConstSym),
}

impl Letter {
    pub fn degree(self) -> usize {
        usize::from(self == Letter::DG)
    }

    fn cancels(self, next: Letter) -> bool {
        matches!((self, next), (Letter::G, Letter::GInv) | (Letter::GInv, Letter::G))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::G => f.write_str("g"),
            Letter::GInv => f.write_str("g^-1"),
            Letter::DG => f.write_str("dg"),
            Letter::Const(c) => write!(f, "T[{},{}]", c.index, c.side),
        }
    }
}

pub fn word_degree(w: &[Letter]) -> usize {
    w.iter().filter(|&&l| l == Letter::DG).count()
}

/// Removes adjacent `g g⁻¹` and `g⁻¹ g`.
pub(crate) fn free_reduce(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        match out.last() {
            Some(&top) if top.cancels(l) => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// Canonical representative of `Tr(w)` and its sign, or `None` when the
/// trace vanishes because one rotation equals the word with opposite sign.
///
/// Rotating `AB` to `BA` costs `(−1)^{|A||B|}`; the lexicographically least
/// rotation is kept.
pub(crate) fn canonical_trace(w: &[Letter]) -> Option<(Vec<Letter>, i8)> {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[w.len() - 1].cancels(w[0]) {
        w.pop();
        w.remove(0);
    }
    let n = w.len();
    if n == 0 {
        return Some((w, 1));
    }
    let total = word_degree(&w);
    let mut best: Option<(Vec<Letter>, i8)> = None;
    let mut conflict = false;
    let mut prefix_deg = 0;
    for i in 0..n {
        if i > 0 {
            prefix_deg += w[i - 1].degree();
        }
        let sign = if (prefix_deg * (total - prefix_deg)) % 2 == 1 { -1 } else { 1 };
        let rot: Vec<Letter> = w[i..].iter().chain(&w[..i]).copied().collect();
        match &best {
            Some((b, s)) if rot == *b => conflict |= *s != sign,
            Some((b, _)) if rot > *b => {}
            _ => {
                best = Some((rot, sign));
                conflict = false;
            }
        }
    }
    if conflict {
        None
    } else {
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    #[test]
    fn free_reduction() {
        assert_eq!(free_reduce(&[G, GInv, DG, GInv, G, G]), vec![DG, G]);
        assert_eq!(free_reduce(&[G, G, GInv, GInv]), vec![]);
    }

    #[test]
    fn mu_four_vanishes() {
        let w = [GInv, DG, GInv, DG, GInv, DG, GInv, DG];
        assert_eq!(canonical_trace(&w), None);
        // two copies: rotation by one µ has sign (−1)^{1·1} = −1
        assert_eq!(canonical_trace(&[GInv, DG, GInv, DG]), None);
    }

    #[test]
    fn cyclic_cancellation_and_rotation() {
        let c = Const(ConstSym::left(0));
        assert_eq!(canonical_trace(&[G, c, GInv]), Some((vec![c], 1)));
        let (w, s) = canonical_trace(&[DG, c, GInv, DG]).unwrap();
        assert_eq!(w, vec![GInv, DG, DG, c]);
        assert_eq!(s, -1);
    }

    #[test]
    fn mu_cubed_survives() {
        let w = [DG, GInv, DG, GInv, DG, GInv];
        let (c, s) = canonical_trace(&w).unwrap();
        assert_eq!(c, vec![GInv, DG, GInv, DG, GInv, DG]);
        assert_eq!(s, 1);
    }
}
