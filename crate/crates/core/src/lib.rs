//! Exact computation of monotone `q`-orbifold Hurwitz numbers by four
//! independent routes, and the machinery to cross-check them:
//!
//! * [`hurwitz`]: direct enumeration of monotone transposition factorizations;
//! * [`schur`]: the Schur-function / content-product partition function;
//! * [`cutjoin`]: the cut-and-join operators and the evolution equation;
//! * [`tr`]: topological recursion on the curve `x = z(1 - z^q)`,
//!   `y = z^(q-1) / (1 - z^q)`.
//!
//! All arithmetic is exact. Sums over the critical points of `x` are taken
//! with the trace map of `Q[c] / ((q+1)c^q - 1)`, so no algebraic number is
//! ever materialized.

pub mod algebra;
pub mod cutjoin;
pub mod error;
pub mod hurwitz;
pub mod schur;
pub mod tr;

pub use algebra::rational::{format_rational, parse_rational, Rational};
pub use error::{Error, Result};
