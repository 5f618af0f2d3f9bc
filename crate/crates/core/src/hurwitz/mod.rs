//! Ground truth: monotone orbifold Hurwitz numbers counted directly from
//! their definition as transposition factorizations in `S_d`.

mod count;
mod partition;
mod permutation;

pub use count::{
    count_connected, count_disconnected, count_table, count_table_dfs, transposition_count, CountTable,
    SizeGuard,
};
pub use partition::Partition;
pub use permutation::{permutations_of_cycle_type, Permutation};
