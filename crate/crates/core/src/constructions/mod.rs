//! Explicit partitions of free groups, thick partitions, P-small witnesses
//! and thin splittings.

mod free;
mod psmall;
mod thick;
mod thin;

pub use free::{
    check_separating_letter, free_3large_cell, free_3large_partition, free_4large_cell, free_4large_partition,
    free_4large_report, free_bipartition, free_non_large_bipartition, lambda_rho, separating_letter,
    LetterProjection, Pairing,
};
pub use psmall::{p_small_witness, PSmallMode};
pub use thick::{greedy_blocks, thick_partition, Block};
pub use thin::{conflict_graph, exact_coloring, greedy_coloring, m_thin_partition, MThinOutcome, EXACT_LIMIT};
