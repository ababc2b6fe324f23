//! Exact arithmetic in `Q` and the cyclotomic fields `Q(zeta_N)`, `N <= 24`,
//! together with exact dense linear algebra over these fields.
//!
//! Scalars are canonical residues modulo the `N`-th cyclotomic polynomial;
//! the polynomials themselves are computed by the recursive division formula
//! rather than read from a table. Elimination is fraction-free (division
//! postponed to pivot normalization) with a deterministic first-nonzero pivot
//! rule, so every basis computed downstream is reproducible bit for bit.

mod matrix;
mod scalar;
pub(crate) mod sparse;

pub use matrix::{ExactMatrix, Rref};
pub use scalar::{CycScalar, Rational, MAX_ORDER};

pub(crate) use scalar::rational_int;
