//! Exact scalar, polynomial, series and quotient-ring arithmetic.

pub mod coeff;
pub mod modring;
pub mod mpoly;
pub mod poly;
pub mod rational;
pub mod series;

pub use coeff::Coeff;
pub use modring::{ring_invert, ring_trace, ModRing, RingElem};
pub use mpoly::MPoly;
pub use poly::Poly;
pub use rational::Rational;
pub use series::{lagrange_invert, series_compose, Series, EXACT};
