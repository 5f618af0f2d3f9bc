//! Symmetric functions and the Schur expansion of the partition function.

mod characters;
mod partition_function;
mod symmetric;

pub use characters::{mn_character, shared_table, CharacterTable};
pub use partition_function::{build_partition_function, PartitionFunctionTruncation};
pub use symmetric::{content_product, schur_at_delta_q, schur_in_p, PowerSumPoly, YoungDiagram};
