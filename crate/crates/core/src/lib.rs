//! Exact-arithmetic engine for finite-order automorphisms of the classical
//! complex semisimple Lie algebras.
//!
//! The building blocks are, bottom up:
//!
//! * [`cycfield`] — the cyclotomic fields `Q(zeta_N)` for `N <= 24` and exact
//!   dense linear algebra over them;
//! * [`rootsys`] — root systems of types A, B, C, D, G2 with Chevalley
//!   structure constants and diagram automorphism groups;
//! * [`liecore`] — Lie algebras as exact structures (matrix realizations of
//!   sl/so/sp and abstract Chevalley models), Killing forms, subalgebra
//!   invariant profiles;
//! * [`autengine`] — finite-order automorphisms: construction, verification,
//!   eigenspace gradings, torus twisting and exhaustive class enumeration;
//! * [`realforms`] — conjugations, the correspondence between antilinear and
//!   linear involutions, real-form identification by Killing signature, and
//!   group-level central homomorphism probes;
//! * [`fixedpoints`] — the classification tables and the fixed-point-locus
//!   reports for moduli automorphisms, with surface-group cohomology
//!   bookkeeping;
//! * [`report`] — the JSON / Markdown report envelope emitted by the CLI.

pub mod autengine;
pub mod center;
pub mod cycfield;
pub mod fixedpoints;
pub mod liecore;
pub mod realforms;
pub mod report;
pub mod rootsys;

mod error;

pub use error::{Error, Result};

/// Seed for the deterministic pseudo-random draws used in rank probing.
/// Recorded in every report envelope; override with `--seed`.
pub const DEFAULT_SEED: u64 = 0x11ca_57a1;

/// Tool version echoed in report envelopes and the C ABI.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
