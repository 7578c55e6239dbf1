//! Simple graphs, their automorphism groups, canonical forms, rigid
//! families, and the coding of trees by graphs.

mod coding;
mod graph;
mod rigid;
mod search;

pub use coding::{encode_tree, TreeCode, ANCHOR, GADGET_SIZE};
pub use graph::{connected_components, direct_sum, DirectSum, Graph};
pub use rigid::{rigid_family, RigidCertificate, RigidFamily, MAX_RIGID_VERTICES, MIN_RIGID_VERTICES};
pub use search::{
    aut_group, canonical_form, canonical_labeling, is_isomorphic, CanonicalForm,
    EXHAUSTIVE_CANON_LIMIT,
};
