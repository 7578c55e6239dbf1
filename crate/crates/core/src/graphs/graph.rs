use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A finite simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::new(r.n, r.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

/// Result of [`direct_sum`]: the union plus where each part landed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DirectSum {
    pub graph: Graph,
    /// `offsets[i]` is the new index of vertex 0 of part `i`; part vertices stay contiguous.
    pub offsets: Vec<usize>,
}

impl DirectSum {
    pub fn vertex(&self, part: usize, v: usize) -> usize {
        self.offsets[part] + v
    }
}

impl Graph {
    /// Rejects loops, out-of-range endpoints and repeated edges.
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u},{v}) out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::invalid(format!("duplicate edge ({u},{v})")));
            }
        }
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in &set {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, []).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().enumerate().filter(|(_, &b)| b).map(|(u, _)| u)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&b| b).count()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// True when `p` maps edges onto edges.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n && self.is_isomorphism_to(self, p.images())
    }

    /// True when `map` is a bijection `self → other` preserving edges and non-edges.
    pub fn is_isomorphism_to(&self, other: &Graph, map: &[usize]) -> bool {
        if self.n != other.n || map.len() != self.n || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &y in map {
            if y >= self.n || seen[y] {
                return false;
            }
            seen[y] = true;
        }
        self.edges.iter().all(|&(u, v)| other.adj[map[u]][map[v]])
    }

    /// Image of the graph under a vertex relabeling `v ↦ map[v]`.
    pub fn relabeled(&self, map: &[usize]) -> Graph {
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (map[u], map[v]))).unwrap()
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).len() <= 1
    }

    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Graph::new(vertices.len(), edges).unwrap()
    }
}

/// Disjoint union, parts laid out consecutively.
pub fn direct_sum(parts: &[Graph]) -> DirectSum {
    let mut offsets = Vec::with_capacity(parts.len());
    let mut edges = Vec::new();
    let mut n = 0;
    for g in parts {
        offsets.push(n);
        edges.extend(g.edges.iter().map(|&(u, v)| (u + n, v + n)));
        n += g.n;
    }
    DirectSum {
        graph: Graph::new(n, edges).unwrap(),
        offsets,
    }
}

/// Vertex sets of the connected components, each sorted, ordered by least vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; g.n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..g.n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut stack = vec![s];
        let mut members = vec![s];
        while let Some(v) = stack.pop() {
            for u in g.neighbors(v) {
                if comp[u] == usize::MAX {
                    comp[u] = id;
                    stack.push(u);
                    members.push(u);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edges() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn sum_of_two_edges() {
        let k2 = Graph::complete(2);
        let s = direct_sum(&[k2.clone(), k2]);
        assert_eq!(s.graph.vertex_count(), 4);
        assert_eq!(s.graph.edge_count(), 2);
        assert_eq!(connected_components(&s.graph).len(), 2);
        assert_eq!(s.vertex(1, 1), 3);
    }

    #[test]
    fn sum_of_one_is_identity() {
        let p = Graph::path(4);
        assert_eq!(direct_sum(&[p.clone()]).graph, p);
    }

    #[test]
    fn edgeless_components_are_singletons() {
        let c = connected_components(&Graph::empty(5));
        assert_eq!(c, (0..5).map(|v| vec![v]).collect::<Vec<_>>());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::cycle(5);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":5,"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]]}"#);
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
