use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::graph::Graph;
use super::search::{aut_group, canonical_form, canonical_labeling, CanonicalForm};
use crate::error::{Error, Result};

/// Graphs with fewer vertices than this are never family members.
pub const MIN_RIGID_VERTICES: usize = 6;
/// Largest vertex count the enumeration will reach.
pub const MAX_RIGID_VERTICES: usize = 7;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RigidCertificate {
    pub canonical_form: CanonicalForm,
    pub aut_order: u128,
    pub connected: bool,
}

/// Pairwise non-isomorphic connected rigid graphs, each in canonical labeling.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RigidFamily {
    pub members: Vec<Graph>,
    pub certificates: Vec<RigidCertificate>,
}

impl RigidFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Recomputes every certificate from scratch.
    pub fn verify(&self) -> bool {
        if self.members.len() != self.certificates.len() {
            return false;
        }
        let mut forms = BTreeSet::new();
        self.members.iter().zip(&self.certificates).all(|(g, c)| {
            let form = canonical_form(g);
            g.is_connected()
                && aut_group(g).is_trivial()
                && c.aut_order == 1
                && c.connected
                && form == c.canonical_form
                && forms.insert(form)
        })
    }
}

fn connected_asymmetric_forms(n: usize) -> BTreeSet<CanonicalForm> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut found = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        if (mask.count_ones() as usize) < n - 1 {
            continue;
        }
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e);
        let g = Graph::new(n, edges).unwrap();
        if !g.is_connected() || !aut_group(&g).is_trivial() {
            continue;
        }
        found.insert(canonical_form(&g));
    }
    found
}

fn cached_forms(n: usize) -> &'static [CanonicalForm] {
    static CACHE: [OnceLock<Vec<CanonicalForm>>; MAX_RIGID_VERTICES + 1] =
        [const { OnceLock::new() }; MAX_RIGID_VERTICES + 1];
    CACHE[n].get_or_init(|| connected_asymmetric_forms(n).into_iter().collect())
}

fn graph_from_form(form: &CanonicalForm) -> Graph {
    let n = form.n;
    let mut bits = form.code.bytes();
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if bits.next() == Some(b'1') {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// The first `k` connected asymmetric graphs with at least six vertices,
/// in increasing (vertex count, canonical form) order.
pub fn rigid_family(k: usize) -> Result<RigidFamily> {
    if k == 0 {
        return Err(Error::invalid("rigid family size must be at least 1"));
    }
    let mut members = Vec::new();
    let mut certificates = Vec::new();
    for n in MIN_RIGID_VERTICES..=MAX_RIGID_VERTICES {
        for form in cached_forms(n) {
            let g = graph_from_form(form);
            debug_assert_eq!(canonical_labeling(&g).0, *form);
            certificates.push(RigidCertificate {
                canonical_form: form.clone(),
                aut_order: aut_group(&g).order(),
                connected: g.is_connected(),
            });
            members.push(g);
            if members.len() == k {
                return Ok(RigidFamily {
                    members,
                    certificates,
                });
            }
        }
    }
    Err(Error::Budget {
        what: "rigid family vertex count",
        limit: MAX_RIGID_VERTICES as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_member_has_six_vertices_and_is_rigid() {
        let fam = rigid_family(1).unwrap();
        assert_eq!(fam.members[0].vertex_count(), 6);
        assert!(aut_group(&fam.members[0]).is_trivial());
        assert!(fam.verify());
    }

    #[test]
    fn zero_members_is_invalid() {
        assert!(rigid_family(0).is_err());
    }

    #[test]
    fn form_round_trip() {
        let fam = rigid_family(2).unwrap();
        for (g, c) in fam.members.iter().zip(&fam.certificates) {
            assert_eq!(&graph_from_form(&c.canonical_form), g);
        }
        assert_ne!(fam.certificates[0].canonical_form, fam.certificates[1].canonical_form);
    }
}
