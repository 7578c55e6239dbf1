//! Orbits, blocks of imprimitivity, normalisers, normaliser towers and
//! permutation-group isomorphism.

mod blocks;
mod iso;
mod normalizer;
mod tower;

pub use blocks::{
    blocks_through_point, is_block, minimal_block, minimal_block_for_set, orbits, BlockSystem,
};
pub use iso::{perm_iso, perm_iso_groups, PermIso};
pub use normalizer::{normalizer, normalizer_with, Backend, SearchConfig};
pub use tower::{normaliser_tower, normaliser_tower_with, Tower};
