//! Permutations, permutation groups and labeled actions.

mod action;
mod chain;
mod group;
mod permutation;

pub use action::{direct_product, direct_product_with_offsets, wreath_power, wreath_top, Cell, CellTag, LabeledAction};
pub use chain::{Level, StabChain};
pub use group::PermGroup;
pub(crate) use group::orbit_under;
pub use permutation::Permutation;
