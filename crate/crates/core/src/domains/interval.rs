//! Integer intervals with arbitrary-precision bounds.

use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::frontend::CmpOp;
use crate::lattice::{Lattice, Widening};

use super::Scalar;

/// An interval bound; `NegInf < Fin(_) < PosInf`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    Fin(BigInt),
    PosInf,
}

impl Bound {
    pub fn fin(n: i64) -> Self {
        Bound::Fin(BigInt::from(n))
    }

    fn add(&self, other: &Bound) -> Bound {
        match (self, other) {
            (Bound::Fin(a), Bound::Fin(b)) => Bound::Fin(a + b),
            // -inf + +inf never arises: lower bounds are never +inf, upper
            // bounds never -inf.
            (Bound::NegInf, _) | (_, Bound::NegInf) => Bound::NegInf,
            _ => Bound::PosInf,
        }
    }

    fn neg(&self) -> Bound {
        match self {
            Bound::NegInf => Bound::PosInf,
            Bound::PosInf => Bound::NegInf,
            Bound::Fin(a) => Bound::Fin(-a),
        }
    }

    fn sign(&self) -> Ordering {
        match self {
            Bound::NegInf => Ordering::Less,
            Bound::PosInf => Ordering::Greater,
            Bound::Fin(a) => a.sign_cmp(),
        }
    }

    // 0 * inf = 0: infinite bounds are never attained.
    fn mul(&self, other: &Bound) -> Bound {
        match (self, other) {
            (Bound::Fin(a), Bound::Fin(b)) => Bound::Fin(a * b),
            _ => {
                let (sa, sb) = (self.sign(), other.sign());
                if sa == Ordering::Equal || sb == Ordering::Equal {
                    Bound::Fin(BigInt::zero())
                } else if sa == sb {
                    Bound::PosInf
                } else {
                    Bound::NegInf
                }
            }
        }
    }

    fn offset(&self, d: i64) -> Bound {
        match self {
            Bound::Fin(a) => Bound::Fin(a + d),
            other => other.clone(),
        }
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::PosInf => write!(f, "+inf"),
            Bound::Fin(a) => write!(f, "{}", a),
        }
    }
}

/// `⊥` or `[lo, hi]` with `lo <= hi`, `lo != +inf`, `hi != -inf`.
///
/// The derived order is only used to sort disjuncts canonically; the lattice
/// order is [`Lattice::leq`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Interval {
    Bottom,
    Range(Bound, Bound),
}

impl Interval {
    /// Builds `[lo, hi]`, or `⊥` when empty.
    pub fn new(lo: Bound, hi: Bound) -> Self {
        if lo > hi || lo == Bound::PosInf || hi == Bound::NegInf {
            Interval::Bottom
        } else {
            Interval::Range(lo, hi)
        }
    }

    pub fn finite(lo: i64, hi: i64) -> Self {
        Interval::new(Bound::fin(lo), Bound::fin(hi))
    }

    pub fn singleton(c: &BigInt) -> Self {
        Interval::Range(Bound::Fin(c.clone()), Bound::Fin(c.clone()))
    }

    pub fn at_least(lo: i64) -> Self {
        Interval::new(Bound::fin(lo), Bound::PosInf)
    }

    pub fn at_most(hi: i64) -> Self {
        Interval::new(Bound::NegInf, Bound::fin(hi))
    }

    pub fn full() -> Self {
        Interval::Range(Bound::NegInf, Bound::PosInf)
    }

    pub fn lo(&self) -> Option<&Bound> {
        match self {
            Interval::Bottom => None,
            Interval::Range(l, _) => Some(l),
        }
    }

    pub fn hi(&self) -> Option<&Bound> {
        match self {
            Interval::Bottom => None,
            Interval::Range(_, h) => Some(h),
        }
    }

    fn as_singleton(&self) -> Option<&BigInt> {
        match self {
            Interval::Range(Bound::Fin(a), Bound::Fin(b)) if a == b => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Bottom => write!(f, "bot"),
            Interval::Range(l, h) => write!(f, "[{},{}]", l, h),
        }
    }
}

impl Lattice for Interval {
    fn bottom() -> Self {
        Interval::Bottom
    }

    fn top(_dim: usize) -> Self {
        Interval::full()
    }

    fn is_bottom(&self) -> bool {
        matches!(self, Interval::Bottom)
    }

    fn leq(&self, other: &Self) -> bool {
        match (self, other) {
            (Interval::Bottom, _) => true,
            (_, Interval::Bottom) => false,
            (Interval::Range(l0, h0), Interval::Range(l1, h1)) => l1 <= l0 && h0 <= h1,
        }
    }

    fn join(&self, other: &Self) -> Self {
        match (self, other) {
            (Interval::Bottom, x) | (x, Interval::Bottom) => x.clone(),
            (Interval::Range(l0, h0), Interval::Range(l1, h1)) => {
                Interval::Range(l0.min(l1).clone(), h0.max(h1).clone())
            }
        }
    }

    fn meet(&self, other: &Self) -> Self {
        match (self, other) {
            (Interval::Bottom, _) | (_, Interval::Bottom) => Interval::Bottom,
            (Interval::Range(l0, h0), Interval::Range(l1, h1)) => {
                Interval::new(l0.max(l1).clone(), h0.min(h1).clone())
            }
        }
    }

    /// `⊥ Δ x = x Δ ⊥ = ⊥`; infinite bounds of the first argument are
    /// replaced by those of the second.
    fn narrow(&self, other: &Self) -> Self {
        match (self, other) {
            (Interval::Bottom, _) | (_, Interval::Bottom) => Interval::Bottom,
            (Interval::Range(l0, h0), Interval::Range(l1, h1)) => {
                let lo = if *l0 == Bound::NegInf { l1 } else { l0 };
                let hi = if *h0 == Bound::PosInf { h1 } else { h0 };
                Interval::new(lo.clone(), hi.clone())
            }
        }
    }

    fn has_native_narrowing() -> bool {
        true
    }
}

impl Widening for Interval {
    /// `⊥ ∇ x = x ∇ ⊥ = x`; unstable bounds jump to infinity.
    fn widen(&self, other: &Self) -> Self {
        match (self, other) {
            (Interval::Bottom, x) | (x, Interval::Bottom) => x.clone(),
            (Interval::Range(l0, h0), Interval::Range(l1, h1)) => {
                let lo = if l1 < l0 { Bound::NegInf } else { l0.clone() };
                let hi = if h0 < h1 { Bound::PosInf } else { h0.clone() };
                Interval::Range(lo, hi)
            }
        }
    }
}

impl Scalar for Interval {
    fn constant(c: &BigInt) -> Self {
        Interval::singleton(c)
    }

    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Interval::Range(l0, h0), Interval::Range(l1, h1)) => {
                Interval::Range(l0.add(l1), h0.add(h1))
            }
            _ => Interval::Bottom,
        }
    }

    fn neg(&self) -> Self {
        match self {
            Interval::Bottom => Interval::Bottom,
            Interval::Range(l, h) => Interval::Range(h.neg(), l.neg()),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Interval::Range(l0, h0), Interval::Range(l1, h1)) => {
                let products = [l0.mul(l1), l0.mul(h1), h0.mul(l1), h0.mul(h1)];
                let lo = products.iter().min().expect("four products").clone();
                let hi = products.iter().max().expect("four products").clone();
                Interval::new(lo, hi)
            }
            _ => Interval::Bottom,
        }
    }

    fn refine(&self, op: CmpOp, rhs: &Self) -> Self {
        let Interval::Range(rl, rh) = rhs else {
            return Interval::Bottom;
        };
        match op {
            CmpOp::Lt => self.meet(&Interval::new(Bound::NegInf, rh.offset(-1))),
            CmpOp::Le => self.meet(&Interval::new(Bound::NegInf, rh.clone())),
            CmpOp::Gt => self.meet(&Interval::new(rl.offset(1), Bound::PosInf)),
            CmpOp::Ge => self.meet(&Interval::new(rl.clone(), Bound::PosInf)),
            CmpOp::Eq => self.meet(rhs),
            CmpOp::Ne => match (self, rhs.as_singleton()) {
                (Interval::Range(l, h), Some(c)) => {
                    let c = Bound::Fin(c.clone());
                    let lo = if *l == c { l.offset(1) } else { l.clone() };
                    let hi = if *h == c { h.offset(-1) } else { h.clone() };
                    Interval::new(lo, hi)
                }
                _ => self.clone(),
            },
        }
    }

    fn may_satisfy(&self, op: CmpOp, rhs: &Self) -> bool {
        let (Interval::Range(l0, h0), Interval::Range(l1, h1)) = (self, rhs) else {
            return false;
        };
        match op {
            CmpOp::Lt => l0 < h1,
            CmpOp::Le => l0 <= h1,
            CmpOp::Gt => h0 > l1,
            CmpOp::Ge => h0 >= l1,
            CmpOp::Eq => !self.meet(rhs).is_bottom(),
            CmpOp::Ne => !matches!(
                (self.as_singleton(), rhs.as_singleton()),
                (Some(a), Some(b)) if a == b
            ),
        }
    }

    fn contains(&self, v: i64) -> bool {
        match self {
            Interval::Bottom => false,
            Interval::Range(l, h) => {
                let v = Bound::fin(v);
                *l <= v && v <= *h
            }
        }
    }

    fn covers(&self, lo: i64, hi: i64) -> bool {
        lo > hi || (self.contains(lo) && self.contains(hi))
    }

    fn render(&self) -> String {
        format!("{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{check_narrowing_axioms, check_widening_axioms};

    fn i(lo: i64, hi: i64) -> Interval {
        Interval::finite(lo, hi)
    }

    #[test]
    fn widening_closed_form() {
        assert_eq!(i(0, 0).widen(&i(0, 2)), Interval::at_least(0));
        assert_eq!(Interval::Bottom.widen(&i(1, 2)), i(1, 2));
        assert_eq!(i(1, 2).widen(&Interval::Bottom), i(1, 2));
        assert_eq!(i(0, 10).widen(&i(0, 5)), i(0, 10));
        assert_eq!(i(0, 10).widen(&i(-1, 5)), Interval::at_most(10));
    }

    #[test]
    fn narrowing_closed_form() {
        assert_eq!(Interval::at_least(0).narrow(&i(0, 99)), i(0, 99));
        assert_eq!(Interval::Bottom.narrow(&i(5, 7)), Interval::Bottom);
        assert_eq!(i(5, 7).narrow(&Interval::Bottom), Interval::Bottom);
        assert_eq!(Interval::full().narrow(&i(3, 4)), i(3, 4));
        // finite bounds are kept
        assert_eq!(i(0, 10).narrow(&i(2, 3)), i(0, 10));
    }

    #[test]
    fn addition() {
        assert_eq!(i(0, 49).add(&i(2, 2)), i(2, 51));
        assert_eq!(i(50, 99).add(&i(10, 10)), i(60, 109));
        assert_eq!(Interval::Bottom.add(&i(1, 1)), Interval::Bottom);
        assert_eq!(Interval::at_least(0).add(&i(2, 2)), Interval::at_least(2));
    }

    #[test]
    fn multiplication_with_infinities() {
        assert_eq!(Interval::at_least(1).mul(&i(-2, -2)), Interval::at_most(-2));
        assert_eq!(Interval::at_least(0).mul(&i(0, 0)), i(0, 0));
        assert_eq!(i(-3, 2).mul(&i(4, 5)), i(-15, 10));
        assert_eq!(Interval::full().mul(&i(1, 1)), Interval::full());
    }

    #[test]
    fn refinement() {
        let x = Interval::at_least(0);
        assert_eq!(x.refine(CmpOp::Lt, &i(100, 100)), i(0, 99));
        assert_eq!(x.refine(CmpOp::Ge, &i(100, 100)), Interval::at_least(100));
        assert_eq!(i(0, 49).refine(CmpOp::Lt, &i(50, 50)), i(0, 49));
        assert_eq!(i(0, 5).refine(CmpOp::Ne, &i(0, 0)), i(1, 5));
        assert_eq!(i(0, 5).refine(CmpOp::Ne, &i(3, 3)), i(0, 5));
        assert_eq!(i(0, 5).refine(CmpOp::Ne, &i(0, 1)), i(0, 5));
        assert_eq!(i(4, 4).refine(CmpOp::Ne, &i(4, 4)), Interval::Bottom);
    }

    #[test]
    fn bottom_and_top_are_extremal() {
        for a in [
            i(0, 0),
            Interval::at_most(-3),
            Interval::full(),
            Interval::Bottom,
        ] {
            assert!(Interval::Bottom.leq(&a));
            assert!(a.leq(&Interval::full()));
            assert!(a.join(&Interval::Bottom).equal(&a));
            assert!(a.meet(&Interval::full()).equal(&a));
        }
        assert_eq!(
            Interval::new(Bound::fin(3), Bound::fin(2)),
            Interval::Bottom
        );
        assert_eq!(
            Interval::new(Bound::PosInf, Bound::PosInf),
            Interval::Bottom
        );
    }

    #[test]
    fn axiom_examples() {
        assert!(check_widening_axioms(&[(i(0, 0), i(0, 2))]).is_empty());
        assert!(check_widening_axioms(&[(Interval::Bottom, Interval::Bottom)]).is_empty());
        assert!(check_narrowing_axioms(&[(Interval::at_least(0), i(0, 99))]).is_empty());
        assert!(check_narrowing_axioms(&[(i(3, 8), i(3, 8))]).is_empty());
        assert_eq!(i(3, 8).narrow(&i(3, 8)), i(3, 8));
    }

    #[test]
    fn rendering() {
        assert_eq!(Interval::at_least(0).render(), "[0,+inf]");
        assert_eq!(Interval::full().render(), "[-inf,+inf]");
        assert_eq!(Interval::Bottom.render(), "bot");
        assert_eq!(i(-4, 7).render(), "[-4,7]");
    }
}
