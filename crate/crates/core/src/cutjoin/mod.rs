//! Cut-and-join operators and the evolution equations they satisfy.

mod bernoulli;
mod npoint;
mod operators;

pub use bernoulli::{bernoulli_numbers, c_alpha, c_alpha_from_bernoulli, zeta_over_z, BernoulliCoefficients};
pub use npoint::*;
pub use operators::{
    apply_j, apply_j_with, build_q_r, evolution_mismatches, f_r_eigencheck, f_r_eigenvalue, verify_evolution,
    GradedOperator, OperatorTerm,
};
