//! The stage complexes `H_n`, `F_n`, the groups `D^n_m`, the main
//! assembly, and its relabeling by an equivalence relation on seed indices.
//!
//! All towers are computed on the action on connected components; the
//! vertex-level check confirms that this action is the full automorphism
//! group of the underlying graph for small stages.

mod assembly;
mod conditions;
mod dcon;
mod stage;

pub use assembly::{
    assemble_main, classify, e_for_target, manifest, relabel_by_e, validate_partition, Assembly,
    Factor, FactorKind, RelabelOutcome, RepresentativePolicy, Shape, SubHeights,
};
pub use conditions::{check_conditions, predicted_level, ConditionReport, ConditionResult};
pub use dcon::{build_d, d_report, DComplex, DReport};
pub use stage::{
    build_stage, check_seed, delta, delta_one, h_group, stage_cells, stage_table,
    stage_tower_height, vertex_level_check, StageComplex, StageOptions, StageTable, VertexCheck,
    DEFAULT_MAX_STAGE, EXTENDED_MAX_STAGE,
};
