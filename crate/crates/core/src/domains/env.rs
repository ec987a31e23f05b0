//! Non-relational environments: one scalar value per program variable.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::frontend::{Cond, Expr, VarId};
use crate::lattice::{Lattice, Widening};

use super::{Abstract, Interval, Parity, Scalar};

/// `⊥`, or a total map from the declared variables to non-bottom values.
///
/// Any operation that would bind a variable to `⊥` yields `Env::Bottom`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Env<V> {
    Bottom,
    Vals(Vec<V>),
}

/// Boxes: environments of intervals.
pub type IntervalBox = Env<Interval>;

/// Environments of parities.
pub type ParityEnv = Env<Parity>;

impl<V: Scalar> Env<V> {
    /// Builds an environment, smashing to `⊥` if any value is `⊥`.
    pub fn from_values(vals: Vec<V>) -> Self {
        if vals.iter().any(|v| v.is_bottom()) {
            Env::Bottom
        } else {
            Env::Vals(vals)
        }
    }

    pub fn get(&self, v: VarId) -> Option<&V> {
        match self {
            Env::Bottom => None,
            Env::Vals(vals) => vals.get(v.0),
        }
    }

    pub fn values(&self) -> Option<&[V]> {
        match self {
            Env::Bottom => None,
            Env::Vals(vals) => Some(vals),
        }
    }

    pub fn dim(&self) -> Option<usize> {
        self.values().map(|v| v.len())
    }

    /// Evaluates `e`; `⊥` when the environment is `⊥`.
    pub fn eval(&self, e: &Expr) -> V {
        let Env::Vals(vals) = self else {
            return V::bottom();
        };
        eval_in(vals, e)
    }

    fn pointwise(&self, other: &Self, f: impl Fn(&V, &V) -> V) -> Self {
        match (self, other) {
            (Env::Vals(a), Env::Vals(b)) => {
                debug_assert_eq!(a.len(), b.len());
                Env::from_values(a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
            }
            _ => unreachable!("pointwise on bottom"),
        }
    }
}

fn eval_in<V: Scalar>(vals: &[V], e: &Expr) -> V {
    match e {
        Expr::Const(c) => V::constant(c),
        Expr::Var(v) => vals[v.0].clone(),
        Expr::Neg(a) => eval_in(vals, a).neg(),
        Expr::Add(a, b) => eval_in(vals, a).add(&eval_in(vals, b)),
        Expr::Sub(a, b) => eval_in(vals, a).sub(&eval_in(vals, b)),
        Expr::Mul(a, b) => eval_in(vals, a).mul(&eval_in(vals, b)),
    }
}

impl<V: Scalar> Lattice for Env<V> {
    fn bottom() -> Self {
        Env::Bottom
    }

    fn top(dim: usize) -> Self {
        Env::Vals(vec![V::top(0); dim])
    }

    fn is_bottom(&self) -> bool {
        matches!(self, Env::Bottom)
    }

    fn leq(&self, other: &Self) -> bool {
        match (self, other) {
            (Env::Bottom, _) => true,
            (_, Env::Bottom) => false,
            (Env::Vals(a), Env::Vals(b)) => a.iter().zip(b).all(|(x, y)| x.leq(y)),
        }
    }

    fn join(&self, other: &Self) -> Self {
        match (self, other) {
            (Env::Bottom, x) | (x, Env::Bottom) => x.clone(),
            _ => self.pointwise(other, V::join),
        }
    }

    fn meet(&self, other: &Self) -> Self {
        match (self, other) {
            (Env::Bottom, _) | (_, Env::Bottom) => Env::Bottom,
            _ => self.pointwise(other, V::meet),
        }
    }

    fn narrow(&self, other: &Self) -> Self {
        match (self, other) {
            (Env::Bottom, _) | (_, Env::Bottom) => Env::Bottom,
            _ => self.pointwise(other, V::narrow),
        }
    }

    fn has_native_narrowing() -> bool {
        V::has_native_narrowing()
    }
}

impl<V: Scalar> Widening for Env<V> {
    fn widen(&self, other: &Self) -> Self {
        match (self, other) {
            (Env::Bottom, x) | (x, Env::Bottom) => x.clone(),
            _ => self.pointwise(other, V::widen),
        }
    }
}

impl<V: Scalar> Abstract for Env<V> {
    fn assign(&self, v: VarId, e: &Expr) -> Self {
        let Env::Vals(vals) = self else {
            return Env::Bottom;
        };
        let value = eval_in(vals, e);
        if value.is_bottom() {
            return Env::Bottom;
        }
        let mut out = vals.clone();
        out[v.0] = value;
        Env::Vals(out)
    }

    fn assume(&self, c: &Cond) -> Self {
        let Env::Vals(vals) = self else {
            return Env::Bottom;
        };
        if !c.lhs.is_linear() || !c.rhs.is_linear() {
            return self.clone();
        }
        let lhs = eval_in(vals, &c.lhs);
        let rhs = eval_in(vals, &c.rhs);
        if !lhs.may_satisfy(c.op, &rhs) {
            return Env::Bottom;
        }
        let mut out = vals.clone();
        if let Expr::Var(v) = c.lhs {
            out[v.0] = out[v.0].refine(c.op, &rhs);
            if out[v.0].is_bottom() {
                return Env::Bottom;
            }
        }
        if let Expr::Var(w) = c.rhs {
            let lhs = eval_in(&out, &c.lhs);
            out[w.0] = out[w.0].refine(c.op.flip(), &lhs);
            if out[w.0].is_bottom() {
                return Env::Bottom;
            }
        }
        Env::Vals(out)
    }

    fn havoc(&self, v: VarId) -> Self {
        let Env::Vals(vals) = self else {
            return Env::Bottom;
        };
        let mut out = vals.clone();
        out[v.0] = V::top(0);
        Env::Vals(out)
    }

    fn contains_state(&self, state: &[Option<i64>], bound: i64) -> bool {
        let Env::Vals(vals) = self else {
            return false;
        };
        vals.iter().zip(state).all(|(v, s)| match s {
            Some(x) => v.contains(*x),
            None => v.covers(-bound, bound),
        })
    }

    /// `{name in value, ...}` with variables sorted by name.
    fn render(&self, names: &[String]) -> String {
        let Env::Vals(vals) = self else {
            return String::from("bot");
        };
        let mut order: Vec<usize> = (0..vals.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        self.render_vars(names, &order)
    }
}

impl<V: Scalar> Env<V> {
    /// Renders only the listed variables, in the given order.
    pub fn render_vars(&self, names: &[String], order: &[usize]) -> String {
        let Env::Vals(vals) = self else {
            return String::from("bot");
        };
        let mut out = String::from("{");
        for (i, &v) in order.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&names[v]);
            out.push_str(" in ");
            out.push_str(&vals[v].render());
        }
        out.push('}');
        out
    }
}
