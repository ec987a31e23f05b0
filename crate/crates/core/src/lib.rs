//! Numerical invariants by abstract interpretation.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! - [`lattice`]: the order-theoretic contract every abstract domain satisfies,
//!   plus checkers for the widening/narrowing axioms;
//! - [`domains`]: parity, intervals, boxes and the finite powerset lifting;
//! - [`galois`]: computable concretizations between an ascending domain and a
//!   more precise descending domain;
//! - [`frontend`]: a small C-like language, its CFG and widening points;
//! - [`fixpoint`]: the ascending (widening) and descending (narrowing) solvers,
//!   in classical and decoupled mode;
//! - [`compare`]: EQ/LT/GT/UN precision classification at widening points;
//! - [`oracle`]: a bounded concrete collecting semantics used to check soundness.
#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod compare;
pub mod domains;
pub mod fixpoint;
pub mod frontend;
pub mod galois;
pub mod lattice;
pub mod oracle;

pub use num_bigint::BigInt;
