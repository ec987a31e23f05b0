//! Finite, non-redundant powersets of a base domain (Hoare order).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::frontend::{Cond, Expr, VarId};
use crate::lattice::Lattice;

use super::Abstract;

/// A finite antichain of non-bottom base values.
///
/// Elements are kept sorted by the base domain's structural order, so equal
/// sets have identical representations. There is deliberately no widening:
/// powersets are only used in descending phases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePowerset<B> {
    elems: Vec<B>,
}

impl<B: Lattice + Ord> FinitePowerset<B> {
    pub fn empty() -> Self {
        FinitePowerset { elems: Vec::new() }
    }

    pub fn singleton(b: B) -> Self {
        Self::normalize(vec![b])
    }

    /// Drops bottoms and strictly dominated elements and keeps one
    /// representative of each group of equal elements.
    pub fn normalize(mut raw: Vec<B>) -> Self {
        raw.retain(|b| !b.is_bottom());
        raw.sort();
        raw.dedup_by(|a, b| a.equal(b));
        let keep: Vec<bool> = (0..raw.len())
            .map(|i| {
                !raw.iter()
                    .enumerate()
                    .any(|(j, other)| i != j && raw[i].leq(other) && !other.leq(&raw[i]))
            })
            .collect();
        let elems = raw
            .into_iter()
            .zip(keep)
            .filter_map(|(b, k)| k.then_some(b))
            .collect();
        FinitePowerset { elems }
    }

    pub fn elements(&self) -> &[B] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Lub of all disjuncts.
    pub fn hull(&self) -> B {
        self.elems.iter().fold(B::bottom(), |acc, b| acc.join(b))
    }

    pub fn map(&self, f: impl Fn(&B) -> B) -> Self {
        Self::normalize(self.elems.iter().map(f).collect())
    }
}

impl<B: Lattice + Ord> Lattice for FinitePowerset<B> {
    fn bottom() -> Self {
        Self::empty()
    }

    fn top(dim: usize) -> Self {
        Self::singleton(B::top(dim))
    }

    fn is_bottom(&self) -> bool {
        self.elems.is_empty()
    }

    fn leq(&self, other: &Self) -> bool {
        self.elems
            .iter()
            .all(|a| other.elems.iter().any(|b| a.leq(b)))
    }

    fn join(&self, other: &Self) -> Self {
        let mut raw = self.elems.clone();
        raw.extend(other.elems.iter().cloned());
        Self::normalize(raw)
    }

    fn meet(&self, other: &Self) -> Self {
        let mut raw = Vec::with_capacity(self.elems.len() * other.elems.len());
        for a in &self.elems {
            for b in &other.elems {
                raw.push(a.meet(b));
            }
        }
        Self::normalize(raw)
    }
}

impl<B: Abstract + Ord> Abstract for FinitePowerset<B> {
    fn assign(&self, v: VarId, e: &Expr) -> Self {
        self.map(|b| b.assign(v, e))
    }

    fn assume(&self, c: &Cond) -> Self {
        self.map(|b| b.assume(c))
    }

    fn havoc(&self, v: VarId) -> Self {
        self.map(|b| b.havoc(v))
    }

    fn contains_state(&self, state: &[Option<i64>], bound: i64) -> bool {
        self.elems.iter().any(|b| b.contains_state(state, bound))
    }

    fn is_disjunctive() -> bool {
        true
    }

    /// `{ a ; b ; ... }`, or `{}` when empty.
    fn render(&self, names: &[String]) -> String {
        if self.elems.is_empty() {
            return String::from("{}");
        }
        let parts: Vec<String> = self.elems.iter().map(|b| b.render(names)).collect();
        alloc::format!("{{ {} }}", parts.join(" ; "))
    }

    fn limit_disjuncts(self, cap: usize) -> Self {
        if self.elems.len() > cap {
            Self::singleton(self.hull())
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::{Interval, IntervalBox};
    use crate::frontend::{CmpOp, Expr};
    use alloc::string::ToString;

    type ISet = FinitePowerset<Interval>;

    fn i(lo: i64, hi: i64) -> Interval {
        Interval::finite(lo, hi)
    }

    fn set(xs: &[Interval]) -> ISet {
        ISet::normalize(xs.to_vec())
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            set(&[Interval::Bottom, i(0, 0), i(0, 2)]).elements(),
            &[i(0, 2)]
        );
        assert_eq!(set(&[i(2, 49), i(0, 0)]).elements(), &[i(0, 0), i(2, 49)]);
        assert_eq!(set(&[i(1, 3), i(1, 3)]).elements(), &[i(1, 3)]);
    }

    #[test]
    fn lub_examples() {
        assert_eq!(
            set(&[i(0, 0)]).join(&set(&[i(2, 49)])).elements(),
            &[i(0, 0), i(2, 49)]
        );
        let s = set(&[i(3, 9), i(20, 30)]);
        assert_eq!(ISet::empty().join(&s), s);
        assert_eq!(set(&[i(0, 5)]).join(&set(&[i(2, 3)])), set(&[i(0, 5)]));
    }

    #[test]
    fn order_and_glb() {
        assert!(set(&[i(0, 0), i(2, 49)]).leq(&set(&[i(0, 49)])));
        assert!(!set(&[i(0, 49)]).leq(&set(&[i(0, 0), i(2, 49)])));
        assert_eq!(set(&[i(0, 10)]).meet(&set(&[i(5, 20)])), set(&[i(5, 10)]));
        assert!(ISet::empty().leq(&set(&[i(0, 0)])));
    }

    #[test]
    fn per_disjunct_assume() {
        let names = ["K".to_string()];
        let b = IntervalBox::from_values(alloc::vec![Interval::at_least(2)]);
        let s = FinitePowerset::singleton(b);
        let c = Cond::new(Expr::var(0), CmpOp::Lt, Expr::constant(7));
        let r = s.assume(&c);
        assert_eq!(r.render(&names), "{ {K in [2,6]} }");
    }

    #[test]
    fn hull_cap() {
        let s = set(&[i(0, 0), i(2, 2), i(4, 4)]);
        assert_eq!(s.clone().limit_disjuncts(3), s);
        assert_eq!(s.limit_disjuncts(2), set(&[i(0, 4)]));
    }

    #[test]
    fn rendering() {
        let names = ["x".to_string()];
        assert_eq!(
            set(&[i(70, 109), i(0, 0), i(2, 2)]).render(&names),
            "{ [0,0] ; [2,2] ; [70,109] }"
        );
        assert_eq!(ISet::empty().render(&names), "{}");
    }
}
