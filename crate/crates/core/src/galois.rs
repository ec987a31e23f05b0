//! Computable concretizations from an ascending domain into a more precise
//! descending domain, and the hull map back.

use crate::domains::{BoxSet, FinitePowerset, Interval, IntervalBox, IntervalSet};
use crate::lattice::Lattice;

/// Domain identifiers accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DomainId {
    Par,
    Itv,
    Box,
    ISet,
    BSet,
}

impl DomainId {
    pub const ALL: [DomainId; 5] = [
        DomainId::Par,
        DomainId::Itv,
        DomainId::Box,
        DomainId::ISet,
        DomainId::BSet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DomainId::Par => "par",
            DomainId::Itv => "itv",
            DomainId::Box => "box",
            DomainId::ISet => "iset",
            DomainId::BSet => "bset",
        }
    }

    pub fn parse(s: &str) -> Option<DomainId> {
        DomainId::ALL.into_iter().find(|d| d.name() == s)
    }

    /// Powersets have no widening and cannot drive an ascending phase.
    pub fn has_widening(self) -> bool {
        !matches!(self, DomainId::ISet | DomainId::BSet)
    }

    /// Single-variable domains.
    pub fn is_scalar(self) -> bool {
        matches!(self, DomainId::Itv | DomainId::ISet)
    }
}

/// A registered ascending/descending combination with its concretization.
#[derive(Clone, Copy)]
pub struct DomainPair<A, D> {
    pub ascending: DomainId,
    pub descending: DomainId,
    pub gamma: fn(&A) -> D,
}

impl<A, D> DomainPair<A, D> {
    pub fn apply(&self, a: &A) -> D {
        (self.gamma)(a)
    }
}

/// Itv ▷ ISet
pub const ITV_ISET: DomainPair<Interval, IntervalSet> = DomainPair {
    ascending: DomainId::Itv,
    descending: DomainId::ISet,
    gamma: gamma_itv_to_iset,
};

/// Box ▷ BSet
pub const BOX_BSET: DomainPair<IntervalBox, BoxSet> = DomainPair {
    ascending: DomainId::Box,
    descending: DomainId::BSet,
    gamma: gamma_box_to_bset,
};

/// The degenerate pair `A ▷ A` with the identity map.
pub fn identity_pair<A: Clone>(id: DomainId) -> DomainPair<A, A> {
    DomainPair {
        ascending: id,
        descending: id,
        gamma: Clone::clone,
    }
}

/// Pairs `(ascending, descending)` with a registered concretization. Each
/// descending domain is strictly more precise than its ascending domain.
pub const REGISTERED_PAIRS: &[(DomainId, DomainId)] = &[
    (DomainId::Itv, DomainId::ISet),
    (DomainId::Box, DomainId::BSet),
];

/// Whether `asc ▷ desc` can be run: same domain (classical) or registered.
pub fn is_registered(asc: DomainId, desc: DomainId) -> bool {
    (asc == desc && asc.has_widening()) || REGISTERED_PAIRS.contains(&(asc, desc))
}

/// `⊥ ↦ ∅`, otherwise the singleton set.
pub fn gamma_itv_to_iset(a: &Interval) -> IntervalSet {
    FinitePowerset::singleton(a.clone())
}

/// `⊥ ↦ ∅`, otherwise the singleton set.
pub fn gamma_box_to_bset(a: &IntervalBox) -> BoxSet {
    FinitePowerset::singleton(a.clone())
}

/// Lub of all disjuncts; `∅ ↦ ⊥`.
pub fn alpha_collapse<B: Lattice + Ord>(s: &FinitePowerset<B>) -> B {
    s.hull()
}
