use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::solver::{
    ascend, descend, AscendOptions, DescendOptions, EquationSystem, FixpointError, NarrowingMode,
    PhaseTrace, DEFAULT_SWEEP_CAP,
};
use crate::domains::{Abstract, BoxSet, Interval, IntervalBox, IntervalSet, ParityEnv};
use crate::frontend::{Cfg, NodeId, WideningPoints};
use crate::galois::{self, DomainId, DomainPair};
use crate::lattice::{Lattice, Widening};

/// Everything that parameterizes one analysis run.
#[derive(Clone, Debug)]
pub struct AnalysisConfig {
    pub ascending: DomainId,
    pub descending: DomainId,
    /// Maximum number of descending sweeps.
    pub k: usize,
    pub widening_delay: usize,
    /// Replaces the structurally selected widening points.
    pub widening_points: Option<Vec<NodeId>>,
    pub narrowing: NarrowingMode,
    pub max_disjuncts: Option<usize>,
    pub max_sweeps: usize,
}

impl AnalysisConfig {
    pub fn new(ascending: DomainId, descending: DomainId) -> Self {
        AnalysisConfig {
            ascending,
            descending,
            k: 3,
            widening_delay: 0,
            widening_points: None,
            narrowing: NarrowingMode::Native,
            max_disjuncts: None,
            max_sweeps: DEFAULT_SWEEP_CAP,
        }
    }

    /// `A ▷ A`
    pub fn classical(domain: DomainId) -> Self {
        Self::new(domain, domain)
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_widening_points(mut self, wp: Vec<NodeId>) -> Self {
        self.widening_points = Some(wp);
        self
    }

    pub fn with_narrowing(mut self, mode: NarrowingMode) -> Self {
        self.narrowing = mode;
        self
    }

    pub fn is_decoupled(&self) -> bool {
        self.ascending != self.descending
    }

    /// Checks the configuration against a program, returning the widening
    /// points to use.
    pub fn validate(&self, cfg: &Cfg) -> Result<WideningPoints, ConfigError> {
        if !self.ascending.has_widening() {
            return Err(ConfigError::NoWidening(self.ascending));
        }
        if !galois::is_registered(self.ascending, self.descending) {
            return Err(ConfigError::Unregistered(self.ascending, self.descending));
        }
        for d in [self.ascending, self.descending] {
            if d.is_scalar() && cfg.vars.len() != 1 {
                return Err(ConfigError::NeedsOneVariable(d, cfg.vars.len()));
            }
        }
        match &self.widening_points {
            None => Ok(cfg.widening_points()),
            Some(nodes) => {
                if let Some(bad) = nodes.iter().find(|n| n.0 >= cfg.node_count) {
                    return Err(ConfigError::UnknownNode(bad.number(), cfg.node_count));
                }
                Ok(WideningPoints::from_nodes(nodes.clone()))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigError {
    NoWidening(DomainId),
    Unregistered(DomainId, DomainId),
    NeedsOneVariable(DomainId, usize),
    UnknownNode(usize, usize),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::NoWidening(d) => write!(
                f,
                "domain `{}` has no widening and can only be used in the descending phase",
                d.name()
            ),
            ConfigError::Unregistered(a, d) => write!(
                f,
                "no concretization registered from `{}` to `{}`",
                a.name(),
                d.name()
            ),
            ConfigError::NeedsOneVariable(d, n) => write!(
                f,
                "domain `{}` tracks a single variable but the program declares {}",
                d.name(),
                n
            ),
            ConfigError::UnknownNode(n, count) => {
                write!(
                    f,
                    "node x{} does not exist (the CFG has {} nodes)",
                    n, count
                )
            }
        }
    }
}

impl core::error::Error for ConfigError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnalysisError {
    Config(ConfigError),
    Fixpoint(FixpointError),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::Config(e) => e.fmt(f),
            AnalysisError::Fixpoint(e) => e.fmt(f),
        }
    }
}

impl core::error::Error for AnalysisError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            AnalysisError::Config(e) => Some(e),
            AnalysisError::Fixpoint(e) => Some(e),
        }
    }
}

impl From<ConfigError> for AnalysisError {
    fn from(e: ConfigError) -> Self {
        AnalysisError::Config(e)
    }
}

impl From<FixpointError> for AnalysisError {
    fn from(e: FixpointError) -> Self {
        AnalysisError::Fixpoint(e)
    }
}

/// Outcome of an `A ▷ D` run in its own types.
#[derive(Clone, Debug)]
pub struct Typed<A, D> {
    pub ascending: PhaseTrace<A>,
    /// The ascending post-fixpoint.
    pub post_fixpoint: Vec<A>,
    /// The post-fixpoint carried into `D`.
    pub transferred: Vec<D>,
    pub descending: PhaseTrace<D>,
    pub result: Vec<D>,
}

fn descend_options(config: &AnalysisConfig) -> DescendOptions {
    DescendOptions {
        max_iterations: config.k,
        narrowing: config.narrowing,
        max_disjuncts: config.max_disjuncts,
    }
}

fn ascend_options(config: &AnalysisConfig) -> AscendOptions {
    AscendOptions {
        widening_delay: config.widening_delay,
        max_sweeps: config.max_sweeps,
    }
}

/// Widening then narrowing in a single domain.
pub fn analyze_classical<D: Abstract + Widening>(
    sys: &EquationSystem<'_>,
    config: &AnalysisConfig,
) -> Result<Typed<D, D>, FixpointError> {
    let (post, asc) = ascend::<D>(sys, ascend_options(config))?;
    let (result, dsc) = descend(sys, post.clone(), descend_options(config))?;
    Ok(Typed {
        ascending: asc,
        transferred: post.clone(),
        post_fixpoint: post,
        descending: dsc,
        result,
    })
}

/// Widening in `A`, then narrowing in `D` starting from the concretized
/// post-fixpoint.
pub fn analyze_decoupled<A, D>(
    sys: &EquationSystem<'_>,
    pair: &DomainPair<A, D>,
    config: &AnalysisConfig,
) -> Result<Typed<A, D>, FixpointError>
where
    A: Abstract + Widening,
    D: Abstract,
{
    let (post, asc) = ascend::<A>(sys, ascend_options(config))?;
    let transferred = concretize(pair, &post);
    if let Some(node) = sys.post_fixpoint_violation(&transferred) {
        return Err(FixpointError::TransferNotPostFixpoint { node });
    }
    let (result, dsc) = descend(sys, transferred.clone(), descend_options(config))?;
    Ok(Typed {
        ascending: asc,
        post_fixpoint: post,
        transferred,
        descending: dsc,
        result,
    })
}

pub fn concretize<A, D>(pair: &DomainPair<A, D>, x: &[A]) -> Vec<D> {
    x.iter().map(|a| pair.apply(a)).collect()
}

/// The concretization of a post-fixpoint of `F_A` is a post-fixpoint of `F_D`.
pub fn check_transfer<A: Abstract, D: Abstract>(
    sys: &EquationSystem<'_>,
    pair: &DomainPair<A, D>,
    post: &[A],
) -> Result<(), NodeId> {
    match sys.post_fixpoint_violation(&concretize(pair, post)) {
        Some(n) => Err(n),
        None => Ok(()),
    }
}

/// Runs `k` glb-narrowing sweeps in both domains from `post` and checks
/// that the `D` result is below the concretized `A` result at every node.
pub fn check_refinement<A: Abstract, D: Abstract>(
    sys: &EquationSystem<'_>,
    pair: &DomainPair<A, D>,
    post: &[A],
    k: usize,
) -> Result<Result<(), NodeId>, FixpointError> {
    let (a, _) = descend(sys, post.to_vec(), DescendOptions::glb(k))?;
    let (d, _) = descend(sys, concretize(pair, post), DescendOptions::glb(k))?;
    Ok(sys
        .cfg()
        .nodes()
        .find(|i| !d[i.0].leq(&pair.apply(&a[i.0])))
        .map_or(Ok(()), Err))
}

/// An abstract state in one of the built-in domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Par(ParityEnv),
    Itv(Interval),
    Box(IntervalBox),
    ISet(IntervalSet),
    BSet(BoxSet),
}

impl Value {
    pub fn domain(&self) -> DomainId {
        match self {
            Value::Par(_) => DomainId::Par,
            Value::Itv(_) => DomainId::Itv,
            Value::Box(_) => DomainId::Box,
            Value::ISet(_) => DomainId::ISet,
            Value::BSet(_) => DomainId::BSet,
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            Value::Par(v) => v.render(names),
            Value::Itv(v) => v.render(names),
            Value::Box(v) => v.render(names),
            Value::ISet(v) => v.render(names),
            Value::BSet(v) => v.render(names),
        }
    }

    pub fn is_bottom(&self) -> bool {
        match self {
            Value::Par(v) => v.is_bottom(),
            Value::Itv(v) => v.is_bottom(),
            Value::Box(v) => v.is_bottom(),
            Value::ISet(v) => v.is_bottom(),
            Value::BSet(v) => v.is_bottom(),
        }
    }

    pub fn contains_state(&self, state: &[Option<i64>], bound: i64) -> bool {
        match self {
            Value::Par(v) => v.contains_state(state, bound),
            Value::Itv(v) => v.contains_state(state, bound),
            Value::Box(v) => v.contains_state(state, bound),
            Value::ISet(v) => v.contains_state(state, bound),
            Value::BSet(v) => v.contains_state(state, bound),
        }
    }

    pub fn is_disjunctive(&self) -> bool {
        matches!(self, Value::ISet(_) | Value::BSet(_))
    }

    /// Embeds interval-based values into the box powerset, where they can
    /// be compared with one another. Parity values have no embedding.
    pub fn to_box_set(&self) -> Option<BoxSet> {
        let itv_box = |i: &Interval| IntervalBox::from_values(alloc::vec![i.clone()]);
        match self {
            Value::Par(_) => None,
            Value::Itv(i) => Some(galois::gamma_box_to_bset(&itv_box(i))),
            Value::Box(b) => Some(galois::gamma_box_to_bset(b)),
            Value::ISet(s) => Some(BoxSet::normalize(
                s.elements().iter().map(itv_box).collect(),
            )),
            Value::BSet(s) => Some(s.clone()),
        }
    }
}

impl From<ParityEnv> for Value {
    fn from(v: ParityEnv) -> Self {
        Value::Par(v)
    }
}

impl From<Interval> for Value {
    fn from(v: Interval) -> Self {
        Value::Itv(v)
    }
}

impl From<IntervalBox> for Value {
    fn from(v: IntervalBox) -> Self {
        Value::Box(v)
    }
}

impl From<IntervalSet> for Value {
    fn from(v: IntervalSet) -> Self {
        Value::ISet(v)
    }
}

impl From<BoxSet> for Value {
    fn from(v: BoxSet) -> Self {
        Value::BSet(v)
    }
}

/// Outcome of a run with values in the built-in domains.
#[derive(Clone, Debug)]
pub struct AnalysisResult {
    pub config: AnalysisConfig,
    pub widening_points: WideningPoints,
    pub ascending: PhaseTrace<Value>,
    /// The concretized post-fixpoint; present for decoupled runs only.
    pub transfer: Option<Vec<Value>>,
    pub descending: PhaseTrace<Value>,
    pub post_fixpoint: Vec<Value>,
    pub result: Vec<Value>,
}

impl AnalysisResult {
    pub fn at(&self, n: NodeId) -> &Value {
        &self.result[n.0]
    }

    /// Whether the descending phase reached a fixpoint.
    pub fn stabilized(&self) -> bool {
        self.descending.stabilized
    }
}

fn erase<A, D>(config: &AnalysisConfig, wp: WideningPoints, t: Typed<A, D>) -> AnalysisResult
where
    A: Clone + Into<Value>,
    D: Clone + Into<Value>,
{
    let lift_a = |v: &Vec<A>| v.iter().cloned().map(Into::into).collect::<Vec<Value>>();
    let lift_d = |v: &Vec<D>| v.iter().cloned().map(Into::into).collect::<Vec<Value>>();
    AnalysisResult {
        config: config.clone(),
        widening_points: wp,
        ascending: t.ascending.map(|a| a.clone().into()),
        transfer: config.is_decoupled().then(|| lift_d(&t.transferred)),
        descending: t.descending.map(|d| d.clone().into()),
        post_fixpoint: lift_a(&t.post_fixpoint),
        result: lift_d(&t.result),
    }
}

/// Validates `config` and runs the corresponding analysis on `cfg`.
pub fn run(cfg: &Cfg, config: &AnalysisConfig) -> Result<AnalysisResult, AnalysisError> {
    let wp = config.validate(cfg)?;
    let sys = EquationSystem::new(cfg, wp.clone());
    let out = match (config.ascending, config.descending) {
        (DomainId::Par, DomainId::Par) => {
            erase(config, wp, analyze_classical::<ParityEnv>(&sys, config)?)
        }
        (DomainId::Itv, DomainId::Itv) => {
            erase(config, wp, analyze_classical::<Interval>(&sys, config)?)
        }
        (DomainId::Box, DomainId::Box) => {
            erase(config, wp, analyze_classical::<IntervalBox>(&sys, config)?)
        }
        (DomainId::Itv, DomainId::ISet) => erase(
            config,
            wp,
            analyze_decoupled(&sys, &galois::ITV_ISET, config)?,
        ),
        (DomainId::Box, DomainId::BSet) => erase(
            config,
            wp,
            analyze_decoupled(&sys, &galois::BOX_BSET, config)?,
        ),
        (a, d) => return Err(ConfigError::Unregistered(a, d).into()),
    };
    Ok(out)
}
