//! The four-element parity lattice.

use alloc::string::String;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::frontend::CmpOp;
use crate::lattice::{Lattice, Widening};

use super::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Bottom,
    Even,
    Odd,
    Top,
}

impl Parity {
    pub fn of(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Lattice for Parity {
    fn bottom() -> Self {
        Parity::Bottom
    }

    fn top(_dim: usize) -> Self {
        Parity::Top
    }

    fn is_bottom(&self) -> bool {
        *self == Parity::Bottom
    }

    fn leq(&self, other: &Self) -> bool {
        matches!((self, other), (Parity::Bottom, _) | (_, Parity::Top)) || self == other
    }

    fn join(&self, other: &Self) -> Self {
        match (self, other) {
            (Parity::Bottom, x) | (x, Parity::Bottom) => *x,
            (a, b) if a == b => *a,
            _ => Parity::Top,
        }
    }

    fn meet(&self, other: &Self) -> Self {
        match (self, other) {
            (Parity::Top, x) | (x, Parity::Top) => *x,
            (a, b) if a == b => *a,
            _ => Parity::Bottom,
        }
    }
}

// Finite height: the lub is a widening.
impl Widening for Parity {
    fn widen(&self, other: &Self) -> Self {
        self.join(other)
    }
}

impl Scalar for Parity {
    fn constant(c: &BigInt) -> Self {
        if c.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn add(&self, other: &Self) -> Self {
        use Parity::*;
        match (self, other) {
            (Bottom, _) | (_, Bottom) => Bottom,
            (Top, _) | (_, Top) => Top,
            (a, b) if a == b => Even,
            _ => Odd,
        }
    }

    fn neg(&self) -> Self {
        *self
    }

    fn mul(&self, other: &Self) -> Self {
        use Parity::*;
        match (self, other) {
            (Bottom, _) | (_, Bottom) => Bottom,
            (Even, _) | (_, Even) => Even,
            (Odd, Odd) => Odd,
            _ => Top,
        }
    }

    // Comparisons carry no parity information worth tracking.
    fn refine(&self, _op: CmpOp, rhs: &Self) -> Self {
        if rhs.is_bottom() {
            Parity::Bottom
        } else {
            *self
        }
    }

    fn may_satisfy(&self, _op: CmpOp, rhs: &Self) -> bool {
        !self.is_bottom() && !rhs.is_bottom()
    }

    fn contains(&self, v: i64) -> bool {
        match self {
            Parity::Bottom => false,
            Parity::Top => true,
            p => *p == Parity::of(v),
        }
    }

    fn covers(&self, lo: i64, hi: i64) -> bool {
        match self {
            _ if lo > hi => true,
            Parity::Top => true,
            Parity::Bottom => false,
            p => lo == hi && *p == Parity::of(lo),
        }
    }

    fn render(&self) -> String {
        String::from(match self {
            Parity::Bottom => "bot",
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Top => "top",
        })
    }
}
