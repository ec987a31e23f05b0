//! Concrete abstract domains and their transfer functions.

mod env;
mod interval;
mod parity;
mod powerset;

use alloc::string::String;
use alloc::vec;

use num_bigint::BigInt;

use crate::frontend::{CmpOp, Cond, Expr, Transfer, VarId};
use crate::lattice::{Lattice, Widening};

pub use env::{Env, IntervalBox, ParityEnv};
pub use interval::{Bound, Interval};
pub use parity::Parity;
pub use powerset::FinitePowerset;

/// Powerset of single-variable intervals.
pub type IntervalSet = FinitePowerset<Interval>;
/// Powerset of boxes.
pub type BoxSet = FinitePowerset<IntervalBox>;

/// A non-relational value domain for a single integer variable.
pub trait Scalar: Widening + Ord {
    fn constant(c: &BigInt) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Restricts `self` to the values that may satisfy `self op rhs`.
    fn refine(&self, op: CmpOp, rhs: &Self) -> Self;

    /// False only when `a op b` holds for no `a` in `self`, `b` in `rhs`.
    fn may_satisfy(&self, op: CmpOp, rhs: &Self) -> bool;

    fn contains(&self, v: i64) -> bool;

    /// Whether every integer in `[lo, hi]` is contained.
    fn covers(&self, lo: i64, hi: i64) -> bool;

    fn render(&self) -> String;
}

/// Program states: a lattice with transfer functions for CFG edges.
pub trait Abstract: Lattice {
    fn assign(&self, v: VarId, e: &Expr) -> Self;
    fn assume(&self, c: &Cond) -> Self;
    fn havoc(&self, v: VarId) -> Self;

    /// Membership of a concrete state; `None` components stand for every
    /// value in `[-bound, bound]`.
    fn contains_state(&self, state: &[Option<i64>], bound: i64) -> bool;

    /// Whether `contains_state` may be false for a partially-unknown state
    /// even though every concrete instance is contained.
    fn is_disjunctive() -> bool {
        false
    }

    fn render(&self, names: &[String]) -> String;

    /// Collapses values with more than `cap` disjuncts; identity for
    /// non-disjunctive domains.
    fn limit_disjuncts(self, _cap: usize) -> Self {
        self
    }

    fn transfer(&self, t: &Transfer) -> Self {
        match t {
            Transfer::Assign(v, e) => self.assign(*v, e),
            Transfer::Assume(c) => self.assume(c),
            Transfer::Havoc(v) => self.havoc(*v),
            Transfer::Skip => self.clone(),
        }
    }
}

// A lone interval is the state of a single-variable program.
impl Abstract for Interval {
    fn assign(&self, v: VarId, e: &Expr) -> Self {
        lift1(self, |b| b.assign(v, e))
    }

    fn assume(&self, c: &Cond) -> Self {
        lift1(self, |b| b.assume(c))
    }

    fn havoc(&self, v: VarId) -> Self {
        lift1(self, |b| b.havoc(v))
    }

    fn contains_state(&self, state: &[Option<i64>], bound: i64) -> bool {
        match state.first() {
            Some(Some(x)) => self.contains(*x),
            Some(None) => self.covers(-bound, bound),
            None => !self.is_bottom(),
        }
    }

    fn render(&self, _names: &[String]) -> String {
        Scalar::render(self)
    }
}

fn lift1(x: &Interval, f: impl Fn(&IntervalBox) -> IntervalBox) -> Interval {
    match f(&IntervalBox::from_values(vec![x.clone()])) {
        Env::Bottom => Interval::Bottom,
        Env::Vals(v) => v[0].clone(),
    }
}
