//! Permutation groups given by generators.

mod blocks;
mod chain;
mod chains;
mod group;
mod perm;
mod structure;

pub use blocks::{
    all_minimal_superblocks, block_stabilizer, is_block, kernel_of_block, kernel_on_blocks,
    maximal_chains, minimal_block_containing, minimal_block_containing_set, superblock_levels,
    BlockSystem,
};
pub use chains::{
    all_prime_chains, chain_satisfies, check_chain_characterization, sylow_blocks, valuation,
    ChainWitness, PrimeChain,
};
pub use group::{PermGroup, PermGroupJson, ELEMENT_LIMIT};
pub use perm::{parse_generator_lines, Perm};
pub use structure::{
    chief_series, composition_summary, is_gamma_d_direct, is_nilpotent_direct, is_nilpotent_lcs,
    simple_orders_in_sym, sylow_subgroup, ChiefFactor, CompositionSummary, MAX_D,
};
