//! Exact-arithmetic computations with the lattice-level invariants of a
//! (polarized) K3 surface: discriminant groups, special and restricted
//! special Brauer groups presented as lattice pairs, the generalized
//! Tate-Shafarevich group of a curve class, twisted-degree bookkeeping for
//! sheaves on curves, and the elliptic-fibration comparison. Every exact
//! sequence the theory asserts is verified mechanically, not assumed.
//!
//! All arithmetic is over `BigInt` / `BigRational`; identical inputs give
//! bit-identical outputs. Values are immutable and freely shareable across
//! threads.
//!
//! The crate is organized bottom-up:
//!
//! * [`mat`] - exact integer/rational matrices, Smith and Hermite forms;
//! * [`lattice`] - lattices with symmetric bilinear forms, duals,
//!   complements, saturation, divisibility, discriminant groups;
//! * [`subgroup`] - finitely generated plus divisible subgroups of `Q^n`,
//!   the calculus behind every kernel/cokernel computation;
//! * [`qz`] - presentations of Q/Z-modules as nested subgroup pairs,
//!   matrix-induced morphisms, and the exactness verifier;
//! * [`k3`] - the K3 lattice, transcendental lattices, gluing checks,
//!   B-field projection;
//! * [`brauer`] - Brauer-group presentations, restriction kernels, class
//!   decomposition;
//! * [`sha`] - the pairing map on the discriminant group and the
//!   Tate-Shafarevich group of a polarized surface;
//! * [`degrees`] - twisted Mukai vectors and degree windows;
//! * [`elliptic`] - fibre classes and the Jacobian-fibration comparison;
//! * [`report`] - JSON job specs and deterministic reports for the CLI.
//!
//! See the `examples/` directory for one runnable walk-through per
//! capability, and the `sha-k3` binary for file-driven use.

pub mod brauer;
pub mod corpus;
pub mod degrees;
pub mod elliptic;
pub mod error;
pub mod k3;
pub mod lattice;
pub mod mat;
pub mod qz;
pub mod report;
pub mod sha;
pub mod subgroup;

pub use error::{Error, Result};
