use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::domains::Abstract;
use crate::frontend::{Cfg, NodeId, WideningPoints};
use crate::lattice::{GlbNarrowing, Widening};

/// `x_i = ⊔ { transfer(e)(x_src) | e into i }`, with `x_entry = ⊤`.
#[derive(Clone, Debug)]
pub struct EquationSystem<'a> {
    cfg: &'a Cfg,
    preds: Vec<Vec<usize>>,
    wp: WideningPoints,
}

impl<'a> EquationSystem<'a> {
    pub fn new(cfg: &'a Cfg, wp: WideningPoints) -> Self {
        EquationSystem {
            cfg,
            preds: cfg.predecessors(),
            wp,
        }
    }

    /// System with the widening points selected from the CFG structure.
    pub fn with_default_wp(cfg: &'a Cfg) -> Self {
        Self::new(cfg, cfg.widening_points())
    }

    pub fn cfg(&self) -> &Cfg {
        self.cfg
    }

    pub fn widening_points(&self) -> &WideningPoints {
        &self.wp
    }

    pub fn len(&self) -> usize {
        self.cfg.node_count
    }

    pub fn is_empty(&self) -> bool {
        self.cfg.node_count == 0
    }

    pub fn dim(&self) -> usize {
        self.cfg.vars.len()
    }

    /// Right-hand side `f_i(x)`.
    pub fn rhs<D: Abstract>(&self, i: NodeId, x: &[D]) -> D {
        if i == self.cfg.entry {
            return D::top(self.dim());
        }
        let mut acc = D::bottom();
        for &ei in &self.preds[i.0] {
            let e = &self.cfg.edges[ei];
            let src = &x[e.source.0];
            if src.is_bottom() {
                continue;
            }
            acc = acc.join(&src.transfer(&e.transfer));
        }
        acc
    }

    /// First node with `f_i(x) ⋢ x_i`, if any.
    pub fn post_fixpoint_violation<D: Abstract>(&self, x: &[D]) -> Option<NodeId> {
        self.cfg.nodes().find(|&i| !self.rhs(i, x).leq(&x[i.0]))
    }

    /// `f(x) ⊑ x`
    pub fn is_post_fixpoint<D: Abstract>(&self, x: &[D]) -> bool {
        self.post_fixpoint_violation(x).is_none()
    }

    /// `f(x) = x`
    pub fn is_fixpoint<D: Abstract>(&self, x: &[D]) -> bool {
        self.cfg.nodes().all(|i| self.rhs(i, x).equal(&x[i.0]))
    }

    /// Initial assignment: `⊤` at the entry, `⊥` elsewhere.
    pub fn initial<D: Abstract>(&self) -> Vec<D> {
        let mut x = vec![D::bottom(); self.len()];
        if !self.is_empty() {
            x[self.cfg.entry.0] = D::top(self.dim());
        }
        x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Ascending,
    Descending,
}

impl Phase {
    pub fn name(self) -> &'static str {
        match self {
            Phase::Ascending => "asc",
            Phase::Descending => "dsc",
        }
    }
}

/// Full assignments after each completed sweep of one phase.
#[derive(Clone, Debug)]
pub struct PhaseTrace<D> {
    pub phase: Phase,
    pub sweeps: Vec<Vec<D>>,
    /// Ascending: a post-fixpoint was detected. Descending: a fixpoint was
    /// detected.
    pub stabilized: bool,
}

impl<D> PhaseTrace<D> {
    pub fn new(phase: Phase) -> Self {
        PhaseTrace {
            phase,
            sweeps: Vec::new(),
            stabilized: false,
        }
    }

    pub fn map<E>(&self, f: impl Fn(&D) -> E) -> PhaseTrace<E> {
        PhaseTrace {
            phase: self.phase,
            sweeps: self
                .sweeps
                .iter()
                .map(|s| s.iter().map(&f).collect())
                .collect(),
            stabilized: self.stabilized,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NarrowingMode {
    /// The domain's own narrowing (the glb for domains without one).
    Native,
    /// Glb-based narrowing at every domain.
    Glb,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixpointError {
    /// The ascending phase exceeded its sweep cap.
    NotStabilized { sweeps: usize },
    /// The descending phase was started from a non-post-fixpoint.
    NotPostFixpoint { node: NodeId },
    /// The transferred ascending result is not a post-fixpoint of the
    /// descending system.
    TransferNotPostFixpoint { node: NodeId },
}

impl fmt::Display for FixpointError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixpointError::NotStabilized { sweeps } => write!(
                f,
                "ascending phase did not stabilize within {} sweeps (broken widening?)",
                sweeps
            ),
            FixpointError::NotPostFixpoint { node } => write!(
                f,
                "descending phase started from a non post-fixpoint (violated at {})",
                node
            ),
            FixpointError::TransferNotPostFixpoint { node } => write!(
                f,
                "internal soundness error: transferred post-fixpoint violated at {}",
                node
            ),
        }
    }
}

impl core::error::Error for FixpointError {}

pub const DEFAULT_SWEEP_CAP: usize = 1000;

#[derive(Clone, Copy, Debug)]
pub struct AscendOptions {
    /// Sweeps that use plain lub at widening points before widening starts.
    pub widening_delay: usize,
    pub max_sweeps: usize,
}

impl Default for AscendOptions {
    fn default() -> Self {
        AscendOptions {
            widening_delay: 0,
            max_sweeps: DEFAULT_SWEEP_CAP,
        }
    }
}

/// Ascending phase: Gauss-Seidel sweeps in node order, widening at the
/// widening points and lub elsewhere, until the assignment is a
/// post-fixpoint.
pub fn ascend<D: Abstract + Widening>(
    sys: &EquationSystem<'_>,
    opts: AscendOptions,
) -> Result<(Vec<D>, PhaseTrace<D>), FixpointError> {
    let mut x: Vec<D> = sys.initial();
    let mut trace = PhaseTrace::new(Phase::Ascending);
    while !sys.is_post_fixpoint(&x) {
        if trace.sweeps.len() >= opts.max_sweeps {
            return Err(FixpointError::NotStabilized {
                sweeps: trace.sweeps.len(),
            });
        }
        let widen = trace.sweeps.len() >= opts.widening_delay;
        for i in sys.cfg().nodes() {
            let v = sys.rhs(i, &x);
            x[i.0] = if widen && sys.widening_points().contains(i) {
                x[i.0].widen(&v)
            } else {
                x[i.0].join(&v)
            };
        }
        trace.sweeps.push(x.clone());
    }
    trace.stabilized = true;
    Ok((x, trace))
}

#[derive(Clone, Copy, Debug)]
pub struct DescendOptions {
    /// Maximum number of descending sweeps.
    pub max_iterations: usize,
    pub narrowing: NarrowingMode,
    pub max_disjuncts: Option<usize>,
}

impl DescendOptions {
    pub fn new(max_iterations: usize) -> Self {
        DescendOptions {
            max_iterations,
            narrowing: NarrowingMode::Native,
            max_disjuncts: None,
        }
    }

    pub fn glb(max_iterations: usize) -> Self {
        DescendOptions {
            narrowing: NarrowingMode::Glb,
            ..Self::new(max_iterations)
        }
    }
}

/// Descending phase from the post-fixpoint `start`: narrowing at widening
/// points, glb elsewhere, at most `max_iterations` sweeps, stopping early
/// when the assignment is a fixpoint.
pub fn descend<D: Abstract>(
    sys: &EquationSystem<'_>,
    start: Vec<D>,
    opts: DescendOptions,
) -> Result<(Vec<D>, PhaseTrace<D>), FixpointError> {
    if let Some(node) = sys.post_fixpoint_violation(&start) {
        return Err(FixpointError::NotPostFixpoint { node });
    }
    let mut x = start;
    let mut trace = PhaseTrace::new(Phase::Descending);
    let mut glb = vec![GlbNarrowing::new(opts.max_iterations); sys.len()];
    let mut fixpoint = sys.is_fixpoint(&x);
    while !fixpoint && trace.sweeps.len() < opts.max_iterations {
        for i in sys.cfg().nodes() {
            let v = sys.rhs(i, &x);
            let next = if sys.widening_points().contains(i) {
                match opts.narrowing {
                    NarrowingMode::Native => x[i.0].narrow(&v),
                    NarrowingMode::Glb => glb[i.0].narrow(&x[i.0], &v),
                }
            } else {
                x[i.0].meet(&v)
            };
            x[i.0] = match opts.max_disjuncts {
                Some(cap) => next.limit_disjuncts(cap),
                None => next,
            };
        }
        trace.sweeps.push(x.clone());
        fixpoint = sys.is_fixpoint(&x);
    }
    trace.stabilized = fixpoint;
    Ok((x, trace))
}
