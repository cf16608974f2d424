//! Permutations, set partitions and integer partitions; genus; exhaustive
//! enumeration oracles; classical closed-form counts.

pub mod counting;
pub mod enumerate;
pub mod genus;
pub mod integer_partition;
pub mod permutation;
pub mod set_partition;

pub use counting::{
    bell_numbers, count_block_type, count_cycle_type, double_factorial_odd, factorial_of, stirling1, stirling2,
    stirling_and_bell, ClassicalTables,
};
pub use enumerate::{
    enumerate_genus_table, moments_from_table, GenusTable, Kind, DEFAULT_PARTITION_LIMIT, DEFAULT_PERMUTATION_LIMIT,
};
pub use genus::{genus_of_pair, genus_of_partition, genus_of_permutation};
pub use integer_partition::IntegerPartition;
pub use permutation::Permutation;
pub use set_partition::{for_each_rgs, SetPartition};
