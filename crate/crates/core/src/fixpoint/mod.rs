//! Round-robin (Gauss-Seidel) fixpoint solvers over the CFG equation system.
//!
//! A run has two phases. The ascending phase widens at the widening points
//! until the assignment is a post-fixpoint. The descending phase then
//! narrows for at most `k` sweeps. In decoupled mode the post-fixpoint is
//! first carried into a more precise domain through a registered
//! concretization, and the descending phase runs there.

mod analysis;
mod solver;

pub use analysis::{
    analyze_classical, analyze_decoupled, check_refinement, check_transfer, concretize, run,
    AnalysisConfig, AnalysisError, AnalysisResult, ConfigError, Typed, Value,
};
pub use solver::{
    ascend, descend, AscendOptions, DescendOptions, EquationSystem, FixpointError, NarrowingMode,
    Phase, PhaseTrace, DEFAULT_SWEEP_CAP,
};
