//! `PGL(2,q)` and `PΓL(2,q)` acting on the projective line over a finite
//! field, and the comparison of normaliser towers over Galois subgroups.

mod field;
mod line;

pub use field::{Field, MAX_PRIME};
pub use line::{
    galois_subgroup_indices, galois_subgroup_on_field, pgammal2, pgl2, verify_lemma_2_4,
    LemmaReport, ProjectiveLine,
};
