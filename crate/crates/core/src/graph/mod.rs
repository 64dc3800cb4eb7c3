//! Graph methods: path metrics, grasshopper cycles, joint transversals and
//! the three-sets colorings of functional graphs.

mod functional;
mod grasshopper;
mod group_partitions;
mod simple;
mod transversal;

pub use functional::{is_displaced, parse_map, three_sets_partition, three_sets_partition_3, FunctionalGraph};
pub use grasshopper::{certify, find_bad_jump, grasshopper_cycle, GrasshopperCycle, GrasshopperReport, MAX_JUMP};
pub use group_partitions::{chain_large_partition, countable_large_partition, large_partition, non_thick_partition};
pub use simple::{parse_edge_list, DistanceTable, SimpleGraph};
pub use transversal::{is_joint_transversal, joint_transversal};
