//! Abstract finite groups by multiplication table, automorphism groups,
//! and automorphism towers.

mod aut;
mod catalog;
mod finite;
mod tower;

pub use aut::{aut_abstract, AutGroup, AutSummary, DEFAULT_ORDER_BOUND};
pub use catalog::{centreless_catalog, named_group, CATALOG_ORDER_BOUND, CENTRELESS_UP_TO_24};
pub use finite::{FiniteGroup, GroupSpec};
pub use tower::{automorphism_tower, check_prop_2_3, AutTower, AutTowerSummary, PropReport};
