//! Order-theoretic contract shared by all abstract domains.

use alloc::vec::Vec;
use core::fmt::Debug;

/// A (bounded) lattice of abstract values.
///
/// `top` takes the number of program variables because environment domains
/// need it to build the all-unknown element; scalar domains ignore it.
pub trait Lattice: Clone + Debug {
    fn bottom() -> Self;
    fn top(dim: usize) -> Self;
    fn is_bottom(&self) -> bool;
    fn leq(&self, other: &Self) -> bool;
    fn join(&self, other: &Self) -> Self;
    fn meet(&self, other: &Self) -> Self;

    /// Semantic equality, derived from the order.
    fn equal(&self, other: &Self) -> bool {
        self.leq(other) && other.leq(self)
    }

    /// Narrowing used in the descending phase.
    ///
    /// Defaults to the glb; the driver bounds the number of descending sweeps,
    /// which turns the glb into a glb-based narrowing.
    fn narrow(&self, other: &Self) -> Self {
        self.meet(other)
    }

    /// Whether [`Lattice::narrow`] is a proper narrowing rather than the glb.
    fn has_native_narrowing() -> bool {
        false
    }
}

/// Domains usable in the ascending phase.
pub trait Widening: Lattice {
    fn widen(&self, other: &Self) -> Self;
}

/// Glb narrowing truncated after a fixed number of applications.
///
/// Within one descending run the first `threshold` calls return the glb;
/// afterwards the first argument is returned unchanged, which forces the
/// sequence to stabilize.
#[derive(Clone, Debug)]
pub struct GlbNarrowing {
    threshold: usize,
    applied: usize,
}

impl GlbNarrowing {
    pub fn new(threshold: usize) -> Self {
        GlbNarrowing {
            threshold,
            applied: 0,
        }
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn applied(&self) -> usize {
        self.applied
    }

    pub fn narrow<D: Lattice>(&mut self, a: &D, b: &D) -> D {
        if self.applied >= self.threshold {
            return a.clone();
        }
        self.applied += 1;
        a.meet(b)
    }

    /// Start a new descending run.
    pub fn reset(&mut self) {
        self.applied = 0;
    }
}

/// Which axiom a sample pair broke.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// `a ⊑ a ∇ b`
    WidenAboveLeft,
    /// `b ⊑ a ∇ b`
    WidenAboveRight,
    /// `a Δ b ⊑ a`
    NarrowBelowLeft,
    /// `a ⊓ b ⊑ a Δ b`
    NarrowAboveGlb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub sample: usize,
    pub axiom: Axiom,
}

/// Checks the upper-bound axiom of widening on every sample pair.
pub fn check_widening_axioms<D: Widening>(samples: &[(D, D)]) -> Vec<Violation> {
    let mut out = Vec::new();
    for (i, (a, b)) in samples.iter().enumerate() {
        let w = a.widen(b);
        if !a.leq(&w) {
            out.push(Violation {
                sample: i,
                axiom: Axiom::WidenAboveLeft,
            });
        }
        if !b.leq(&w) {
            out.push(Violation {
                sample: i,
                axiom: Axiom::WidenAboveRight,
            });
        }
    }
    out
}

/// Checks `a ⊒ narrow(a, b) ⊒ a ⊓ b` on every sample pair, using the
/// domain's own narrowing.
pub fn check_narrowing_axioms<D: Lattice>(samples: &[(D, D)]) -> Vec<Violation> {
    check_narrowing_with(samples, |a, b| a.narrow(b))
}

/// Same as [`check_narrowing_axioms`] for an arbitrary narrowing operator.
pub fn check_narrowing_with<D, F>(samples: &[(D, D)], mut narrow: F) -> Vec<Violation>
where
    D: Lattice,
    F: FnMut(&D, &D) -> D,
{
    let mut out = Vec::new();
    for (i, (a, b)) in samples.iter().enumerate() {
        let n = narrow(a, b);
        if !n.leq(a) {
            out.push(Violation {
                sample: i,
                axiom: Axiom::NarrowBelowLeft,
            });
        }
        if !a.meet(b).leq(&n) {
            out.push(Violation {
                sample: i,
                axiom: Axiom::NarrowAboveGlb,
            });
        }
    }
    out
}

/// The chain did not stabilize within the step bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotStabilized {
    pub max_steps: usize,
}

/// Default bound for [`stabilizes`].
pub const DEFAULT_MAX_STEPS: usize = 64;

/// Runs `x0 = a0, x(i+1) = op(x(i), a(i+1))` over `chain` and returns the
/// first index `i` with `x(i+1) = x(i)`.
///
/// Fails if no such `i <= max_steps` exists among the available elements.
/// Divergence cannot be proven, only bounded.
pub fn stabilizes<D, I, F>(chain: I, mut op: F, max_steps: usize) -> Result<usize, NotStabilized>
where
    D: Lattice,
    I: IntoIterator<Item = D>,
    F: FnMut(&D, &D) -> D,
{
    let mut chain = chain.into_iter();
    let Some(mut x) = chain.next() else {
        return Err(NotStabilized { max_steps });
    };
    for (i, a) in chain.enumerate() {
        if i > max_steps {
            break;
        }
        let next = op(&x, &a);
        if next.equal(&x) {
            return Ok(i);
        }
        x = next;
    }
    Err(NotStabilized { max_steps })
}
