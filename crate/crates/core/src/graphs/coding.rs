use serde::{Deserialize, Serialize};

use super::graph::Graph;
use crate::normtrees::{Node, Tree};

/// Anchor gadget: a 5-cycle `0-1-2-3-4` with chord `1-3` and a pendant
/// vertex 5 on 4. It is rigid, and it is the only 2-connected piece of any
/// coded graph, so automorphisms fix it pointwise.
const GADGET_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3), (4, 5)];
pub const GADGET_SIZE: usize = 6;
/// Tree roots hang off this gadget vertex.
pub const ANCHOR: usize = 2;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeCode {
    pub graph: Graph,
    /// `node_vertex[k][i]` is the vertex coding node `(k, i)`.
    pub node_vertex: Vec<Vec<usize>>,
}

impl TreeCode {
    pub fn vertex(&self, (k, i): Node) -> usize {
        self.node_vertex[k][i]
    }
}

/// Codes a rooted forest as a connected graph: one vertex per node, an edge
/// from each node to its parent, and each root joined to the anchor of the
/// gadget. Automorphisms of the code restrict to tree automorphisms and
/// every tree automorphism extends, fixing the gadget.
pub fn encode_tree(t: &Tree) -> TreeCode {
    let mut edges: Vec<(usize, usize)> = GADGET_EDGES.to_vec();
    let mut node_vertex: Vec<Vec<usize>> = Vec::with_capacity(t.height());
    let mut next = GADGET_SIZE;
    for k in 0..t.height() {
        let ids: Vec<usize> = (next..next + t.level_size(k)).collect();
        next += t.level_size(k);
        for (i, &v) in ids.iter().enumerate() {
            let up = match t.parents()[k][i] {
                None => ANCHOR,
                Some(p) => node_vertex[k - 1][p],
            };
            edges.push((up, v));
        }
        node_vertex.push(ids);
    }
    TreeCode {
        graph: Graph::new(next, edges).expect("coding edges are simple"),
        node_vertex,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::aut_group;
    use crate::normtrees::build_normal;

    #[test]
    fn gadget_alone_is_rigid() {
        let code = encode_tree(&Tree::empty());
        assert_eq!(code.graph.vertex_count(), GADGET_SIZE);
        assert!(aut_group(&code.graph).is_trivial());
    }

    #[test]
    fn single_node_is_rigid() {
        let code = encode_tree(&build_normal(1));
        assert!(aut_group(&code.graph).is_trivial());
        assert!(code.graph.is_connected());
    }

    #[test]
    fn binary_tree_orders() {
        assert_eq!(aut_group(&encode_tree(&build_normal(2)).graph).order(), 2);
        assert_eq!(aut_group(&encode_tree(&build_normal(3)).graph).order(), 8);
        assert_eq!(aut_group(&encode_tree(&build_normal(5)).graph).order(), 1 << 15);
    }
}
