//! Control-flow graphs with transfer-labelled edges.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use super::ast::{Cond, Expr, Program, Stmt, VarId};

/// Node index; node `i` is labelled `x{i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl NodeId {
    /// 1-based number used in labels and on the command line.
    pub fn number(self) -> usize {
        self.0 + 1
    }

    pub fn from_number(n: usize) -> Option<NodeId> {
        n.checked_sub(1).map(NodeId)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.number())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transfer {
    Assign(VarId, Expr),
    Assume(Cond),
    Havoc(VarId),
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: NodeId,
    pub target: NodeId,
    pub transfer: Transfer,
}

#[derive(Clone, Debug)]
pub struct Cfg {
    pub vars: Vec<String>,
    pub node_count: usize,
    /// Edges in construction order (source order of the program).
    pub edges: Vec<Edge>,
    pub entry: NodeId,
    pub exit: NodeId,
}

struct Builder {
    nodes: usize,
    edges: Vec<Edge>,
}

impl Builder {
    fn fresh(&mut self) -> NodeId {
        self.nodes += 1;
        NodeId(self.nodes - 1)
    }

    fn edge(&mut self, source: NodeId, target: NodeId, transfer: Transfer) {
        self.edges.push(Edge {
            source,
            target,
            transfer,
        });
    }

    fn seq(&mut self, stmts: &[Stmt], from: NodeId, to: NodeId) {
        if stmts.is_empty() {
            self.edge(from, to, Transfer::Skip);
            return;
        }
        let mut cur = from;
        for (i, s) in stmts.iter().enumerate() {
            let next = if i + 1 == stmts.len() {
                to
            } else {
                self.fresh()
            };
            self.stmt(s, cur, next);
            cur = next;
        }
    }

    fn stmt(&mut self, s: &Stmt, from: NodeId, to: NodeId) {
        match s {
            Stmt::Assign(v, e) => self.edge(from, to, Transfer::Assign(*v, e.clone())),
            Stmt::Havoc(v) => self.edge(from, to, Transfer::Havoc(*v)),
            Stmt::Skip => self.edge(from, to, Transfer::Skip),
            Stmt::If {
                cond,
                then_branch,
                else_branch,
            } => {
                let then_node = self.fresh();
                self.edge(from, then_node, Transfer::Assume(cond.clone()));
                if else_branch.is_empty() {
                    self.edge(from, to, Transfer::Assume(cond.negate()));
                    self.seq(then_branch, then_node, to);
                } else {
                    let else_node = self.fresh();
                    self.edge(from, else_node, Transfer::Assume(cond.negate()));
                    self.seq(then_branch, then_node, to);
                    self.seq(else_branch, else_node, to);
                }
            }
            Stmt::While { cond, body } => {
                // `from` is the loop head; the body jumps back to it.
                let guard = self.fresh();
                self.edge(from, guard, Transfer::Assume(cond.clone()));
                self.edge(from, to, Transfer::Assume(cond.negate()));
                self.seq(body, guard, from);
            }
        }
    }
}

/// Builds the CFG of `p` and numbers its nodes in reverse postorder.
///
/// While loops use the node before the loop as their head, so the
/// running example yields six nodes: entry, head, post-guard, then, else, exit.
pub fn build_cfg(p: &Program) -> Cfg {
    let mut b = Builder {
        nodes: 0,
        edges: Vec::new(),
    };
    let entry = b.fresh();
    let exit = b.fresh();
    let mut start = entry;
    if matches!(p.body.first(), Some(Stmt::While { .. })) {
        // the entry node must not be a loop head
        let head = b.fresh();
        b.edge(entry, head, Transfer::Skip);
        start = head;
    }
    if p.body.is_empty() {
        b.edge(entry, exit, Transfer::Skip);
    } else {
        b.seq(&p.body, start, exit);
    }
    let raw = Cfg {
        vars: p.vars.clone(),
        node_count: b.nodes,
        edges: b.edges,
        entry,
        exit,
    };
    renumber(raw)
}

impl Cfg {
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.node_count).map(NodeId)
    }

    /// Out-edges of each node, in construction order.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.node_count];
        for (i, e) in self.edges.iter().enumerate() {
            succ[e.source.0].push(i);
        }
        succ
    }

    /// In-edges of each node, in construction order.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.node_count];
        for (i, e) in self.edges.iter().enumerate() {
            pred[e.target.0].push(i);
        }
        pred
    }

    /// Depth-first search from the entry; earlier edges are explored last so
    /// that reverse postorder follows source order.
    fn dfs(&self) -> (Vec<NodeId>, Vec<usize>) {
        let succ = self.successors();
        let mut state = vec![0u8; self.node_count]; // 0 new, 1 on stack, 2 done
        let mut post = Vec::new();
        let mut back = Vec::new();
        // (node, remaining out-edges in exploration order)
        let mut stack: Vec<(NodeId, Vec<usize>)> = Vec::new();
        let order = |n: NodeId| -> Vec<usize> { succ[n.0].clone() };
        state[self.entry.0] = 1;
        stack.push((self.entry, order(self.entry)));
        while let Some((node, pending)) = stack.last_mut() {
            let node = *node;
            match pending.pop() {
                Some(ei) => {
                    let t = self.edges[ei].target;
                    match state[t.0] {
                        0 => {
                            state[t.0] = 1;
                            stack.push((t, order(t)));
                        }
                        1 => back.push(ei),
                        _ => {}
                    }
                }
                None => {
                    state[node.0] = 2;
                    post.push(node);
                    stack.pop();
                }
            }
        }
        (post, back)
    }

    /// Nodes reachable from the entry.
    pub fn reachable(&self) -> Vec<bool> {
        let (post, _) = self.dfs();
        let mut r = vec![false; self.node_count];
        for n in post {
            r[n.0] = true;
        }
        r
    }

    /// Targets of depth-first back edges: one point on every cycle.
    pub fn widening_points(&self) -> WideningPoints {
        let (_, back) = self.dfs();
        let mut nodes: Vec<NodeId> = back.iter().map(|&e| self.edges[e].target).collect();
        nodes.sort();
        nodes.dedup();
        WideningPoints(nodes)
    }

    /// Renders the graph in DOT format, nodes labelled `x<i>`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph cfg {\n");
        for n in self.nodes() {
            let shape = if n == self.entry || n == self.exit {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  {} [label=\"{}\", shape={}];", n, n, shape);
        }
        for e in &self.edges {
            let label = self.transfer_label(&e.transfer);
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                e.source,
                e.target,
                label.replace('"', "\\\"")
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn transfer_label(&self, t: &Transfer) -> String {
        let p = Program {
            vars: self.vars.clone(),
            body: Vec::new(),
        };
        match t {
            Transfer::Assign(v, e) => {
                alloc::format!("{} := {}", self.vars[v.0], p.display_expr(e))
            }
            Transfer::Assume(c) => alloc::format!("assume {}", p.display_cond(c)),
            Transfer::Havoc(v) => alloc::format!("havoc {}", self.vars[v.0]),
            Transfer::Skip => String::from("skip"),
        }
    }
}

/// Renumbers nodes in reverse postorder from the entry.
fn renumber(raw: Cfg) -> Cfg {
    let (post, _) = raw.dfs();
    let mut map = vec![None; raw.node_count];
    for (i, n) in post.iter().rev().enumerate() {
        map[n.0] = Some(NodeId(i));
    }
    let edges = raw
        .edges
        .iter()
        .filter_map(|e| {
            Some(Edge {
                source: map[e.source.0]?,
                target: map[e.target.0]?,
                transfer: e.transfer.clone(),
            })
        })
        .collect();
    Cfg {
        vars: raw.vars,
        node_count: post.len(),
        edges,
        entry: map[raw.entry.0].expect("entry is reachable"),
        exit: map[raw.exit.0].expect("exit is reachable"),
    }
}

/// Widening points, sorted by node id.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WideningPoints(pub Vec<NodeId>);

impl WideningPoints {
    pub fn contains(&self, n: NodeId) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    pub fn from_nodes(mut nodes: Vec<NodeId>) -> Self {
        nodes.sort();
        nodes.dedup();
        WideningPoints(nodes)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.0.iter().copied()
    }
}

/// Widening points of `c`: the loop heads found as depth-first back-edge
/// targets.
pub fn select_widening_points(c: &Cfg) -> WideningPoints {
    c.widening_points()
}
