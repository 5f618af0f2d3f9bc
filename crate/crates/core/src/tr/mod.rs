//! Topological recursion on the monotone curve, re-expansion in `x`, and the
//! loop-equation checks.

pub mod curve;
pub mod expand;
pub mod local;
pub mod loops;
pub mod omega;
pub mod recursion;

pub use curve::{critical_point_value, deck_series, local_pair, DeckSeries, LocalPoint, SpectralCurve};
pub use expand::{
    check_expansion, check_expansion_with, check_unstable, connected_numbers, expand_in_x, z_of_x, Comparison, ExpansionReport,
    UnstableReport, XExpansion,
};
pub use local::{Arg, LocalContext, LocalForm};
pub use loops::{
    check_linear_loop, check_linear_loop_with, check_quadratic_loop, check_quadratic_loop_with, default_spectators,
    LoopMutation,
};
pub use omega::{OmegaDifferential, OmegaKind};
pub use recursion::{
    compute_omega, kernel_terms, prerequisites, recursion_kernel, reduce_poles, validate_spectators, OmegaSection,
    OmegaStore, DEFAULT_ORDER_GUARD,
};
