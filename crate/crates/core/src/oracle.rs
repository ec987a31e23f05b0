//! Bounded concrete collecting semantics.
//!
//! States are partial valuations: `None` marks a variable that has not been
//! read since it became unknown (uninitialized or havocked), and stands for
//! every value in `[-bound, bound]`. A read of an unknown variable splits the
//! state over that range. States whose values leave the range are dropped, so
//! the collected sets under-approximate the reachable states. This is what a
//! soundness check needs: every collected state must be covered by the
//! abstract value at its node.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use crate::fixpoint::Value;
use crate::frontend::{Cfg, Cond, Expr, NodeId, Transfer, VarId};

pub type State = Vec<Option<i64>>;

pub const DEFAULT_BOUND: i64 = 128;
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// More than `cap` states were collected.
    Infeasible { cap: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::Infeasible { cap } => write!(
                f,
                "concrete exploration exceeded {} states; lower the bound",
                cap
            ),
        }
    }
}

impl core::error::Error for OracleError {}

/// Reachable states per node.
#[derive(Clone, Debug)]
pub struct Collected {
    pub bound: i64,
    pub states: Vec<BTreeSet<State>>,
}

impl Collected {
    pub fn at(&self, n: NodeId) -> &BTreeSet<State> {
        &self.states[n.0]
    }

    pub fn total(&self) -> usize {
        self.states.iter().map(BTreeSet::len).sum()
    }

    /// Distinct values of the given variables over the fully known states at
    /// `n`.
    pub fn project(&self, n: NodeId, vars: &[VarId]) -> BTreeSet<Vec<i64>> {
        self.states[n.0]
            .iter()
            .filter_map(|s| vars.iter().map(|v| s[v.0]).collect::<Option<Vec<_>>>())
            .collect()
    }
}

enum Eval {
    Known(i128),
    Unknown(VarId),
    Overflow,
}

fn eval(e: &Expr, s: &[Option<i64>]) -> Eval {
    use Eval::*;
    let bin = |a: &Expr, b: &Expr, op: fn(i128, i128) -> Option<i128>| match eval(a, s) {
        Known(x) => match eval(b, s) {
            Known(y) => op(x, y).map_or(Overflow, Known),
            other => other,
        },
        other => other,
    };
    match e {
        Expr::Const(c) => c.to_i128().map_or(Overflow, Known),
        Expr::Var(v) => s[v.0].map_or(Unknown(*v), |x| Known(x.into())),
        Expr::Neg(a) => match eval(a, s) {
            Known(x) => x.checked_neg().map_or(Overflow, Known),
            other => other,
        },
        Expr::Add(a, b) => bin(a, b, i128::checked_add),
        Expr::Sub(a, b) => bin(a, b, i128::checked_sub),
        Expr::Mul(a, b) => bin(a, b, i128::checked_mul),
    }
}

/// Splits `s` over every value of `v` in range.
fn split(s: &[Option<i64>], v: VarId, bound: i64, out: &mut Vec<State>) {
    for x in -bound..=bound {
        let mut t = s.to_vec();
        t[v.0] = Some(x);
        out.push(t);
    }
}

fn post_assume(c: &Cond, s: State, bound: i64, out: &mut Vec<State>) {
    let mut pending = vec![s];
    while let Some(s) = pending.pop() {
        let lhs = eval(&c.lhs, &s);
        let rhs = eval(&c.rhs, &s);
        match (lhs, rhs) {
            (Eval::Unknown(v), _) | (_, Eval::Unknown(v)) => split(&s, v, bound, &mut pending),
            (Eval::Known(a), Eval::Known(b)) if c.op.holds(&a, &b) => out.push(s),
            _ => {}
        }
    }
}

fn post_assign(v: VarId, e: &Expr, s: State, bound: i64, out: &mut Vec<State>) {
    let mut pending = vec![s];
    while let Some(mut s) = pending.pop() {
        match eval(e, &s) {
            Eval::Unknown(u) => split(&s, u, bound, &mut pending),
            Eval::Known(x) if (-(bound as i128)..=bound as i128).contains(&x) => {
                s[v.0] = Some(x as i64);
                out.push(s);
            }
            _ => {}
        }
    }
}

/// Successor states of `s` along an edge.
pub fn post(t: &Transfer, s: &[Option<i64>], bound: i64) -> Vec<State> {
    let mut out = Vec::new();
    match t {
        Transfer::Assign(v, e) => post_assign(*v, e, s.to_vec(), bound, &mut out),
        Transfer::Assume(c) => post_assume(c, s.to_vec(), bound, &mut out),
        Transfer::Havoc(v) => {
            let mut t = s.to_vec();
            t[v.0] = None;
            out.push(t);
        }
        Transfer::Skip => out.push(s.to_vec()),
    }
    out
}

/// Explores the CFG from the entry with every variable unknown.
pub fn collect(cfg: &Cfg, bound: i64, cap: usize) -> Result<Collected, OracleError> {
    let mut states = vec![BTreeSet::new(); cfg.node_count];
    let succ = cfg.successors();
    let init: State = vec![None; cfg.vars.len()];
    states[cfg.entry.0].insert(init.clone());
    let mut total = 1usize;
    let mut work = VecDeque::from([(cfg.entry, init)]);
    while let Some((n, s)) = work.pop_front() {
        for &ei in &succ[n.0] {
            let e = &cfg.edges[ei];
            for t in post(&e.transfer, &s, bound) {
                if states[e.target.0].insert(t.clone()) {
                    total += 1;
                    if total > cap {
                        return Err(OracleError::Infeasible { cap });
                    }
                    work.push_back((e.target, t));
                }
            }
        }
    }
    Ok(Collected { bound, states })
}

/// A collected state not covered by the abstract value at its node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unsound {
    pub node: NodeId,
    pub state: State,
}

fn covers(v: &Value, s: &[Option<i64>], bound: i64) -> bool {
    if v.contains_state(s, bound) {
        return true;
    }
    // A disjunctive value may cover an unknown component only piecewise.
    match s.iter().position(Option::is_none) {
        Some(i) if v.is_disjunctive() => (-bound..=bound).all(|x| {
            let mut t = s.to_vec();
            t[i] = Some(x);
            covers(v, &t, bound)
        }),
        _ => false,
    }
}

/// Every collected state that the abstract values fail to cover.
pub fn check_soundness(collected: &Collected, values: &[Value]) -> Vec<Unsound> {
    let mut bad = Vec::new();
    for (i, set) in collected.states.iter().enumerate() {
        for s in set {
            if !covers(&values[i], s, collected.bound) {
                bad.push(Unsound {
                    node: NodeId(i),
                    state: s.clone(),
                });
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::{build_cfg, parse};

    fn run(src: &str, bound: i64) -> (Cfg, Collected) {
        let cfg = build_cfg(&parse(src).unwrap());
        let c = collect(&cfg, bound, DEFAULT_STATE_CAP).unwrap();
        (cfg, c)
    }

    #[test]
    fn counting_loop_exit() {
        let (cfg, c) = run("int i; i = 0; while (i < 10) { i = i + 1; }", 64);
        let exit: Vec<_> = c.at(cfg.exit).iter().cloned().collect();
        assert_eq!(exit, vec![vec![Some(10)]]);
    }

    #[test]
    fn uninitialized_read_splits() {
        let (cfg, c) = run("int x; if (x > 2) { x = 0; }", 4);
        let exit = c.project(cfg.exit, &[VarId(0)]);
        let want: BTreeSet<Vec<i64>> = [-4, -3, -2, -1, 0, 1, 2].iter().map(|&v| vec![v]).collect();
        assert_eq!(exit, want);
    }

    #[test]
    fn out_of_range_states_are_dropped() {
        let (cfg, c) = run("int x; x = 0; while (x >= 0) { x = x + 50; }", 100);
        assert!(c.at(cfg.exit).is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = build_cfg(&parse("int x, y; x = y;").unwrap());
        assert_eq!(
            collect(&cfg, 1000, 100).unwrap_err(),
            OracleError::Infeasible { cap: 100 }
        );
    }

    #[test]
    fn havoc_forgets() {
        let (cfg, c) = run("int x; x = 3; havoc x;", 8);
        let exit: Vec<_> = c.at(cfg.exit).iter().cloned().collect();
        assert_eq!(exit, vec![vec![None]]);
    }
}
