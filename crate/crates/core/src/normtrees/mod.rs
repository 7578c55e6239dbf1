//! Finite normal trees: validation, end-extension, branches, and extension
//! of level-restricted isomorphisms.

mod iso;
mod tree;

pub use iso::{count_extensions, extend_iso, PartialTreeIso};
pub use tree::{build_normal, end_extend, validate_normal, Node, NormalityReport, Tree, Violation};
