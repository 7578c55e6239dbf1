//! Individualisation-refinement search: automorphism groups, isomorphism
//! and canonical forms.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::graph::Graph;
use crate::perm::{orbit_under, PermGroup, Permutation};

type Cells = Vec<Vec<usize>>;

/// Refines an ordered partition to the coarsest equitable one below it.
/// Cells are split by neighbour counts into earlier cells, smallest count
/// first, so the result commutes with graph isomorphisms.
pub(crate) fn refine(g: &Graph, cells: &mut Cells) {
    'outer: loop {
        for w in 0..cells.len() {
            for c in 0..cells.len() {
                if cells[c].len() < 2 {
                    continue;
                }
                let counts: Vec<usize> = cells[c]
                    .iter()
                    .map(|&v| cells[w].iter().filter(|&&u| g.has_edge(u, v)).count())
                    .collect();
                if counts.iter().all(|&k| k == counts[0]) {
                    continue;
                }
                let mut keys: Vec<usize> = counts.clone();
                keys.sort_unstable();
                keys.dedup();
                let pieces: Vec<Vec<usize>> = keys
                    .iter()
                    .map(|&k| {
                        cells[c]
                            .iter()
                            .zip(&counts)
                            .filter(|(_, &x)| x == k)
                            .map(|(&v, _)| v)
                            .collect()
                    })
                    .collect();
                cells.splice(c..=c, pieces);
                continue 'outer;
            }
        }
        return;
    }
}

/// Cell sizes plus the quotient matrix of an equitable partition.
fn invariant(g: &Graph, cells: &Cells) -> Vec<usize> {
    let mut inv: Vec<usize> = cells.iter().map(|c| c.len()).collect();
    for a in cells {
        let v = a[0];
        for b in cells {
            inv.push(b.iter().filter(|&&u| g.has_edge(u, v)).count());
        }
    }
    inv
}

fn target_cell(cells: &Cells) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, c) in cells.iter().enumerate() {
        if c.len() > 1 && best.map_or(true, |b| c.len() < cells[b].len()) {
            best = Some(i);
        }
    }
    best
}

fn individualize(g: &Graph, cells: &Cells, t: usize, v: usize) -> Cells {
    let mut next = cells.clone();
    let rest: Vec<usize> = cells[t].iter().copied().filter(|&u| u != v).collect();
    next.splice(t..=t, [vec![v], rest]);
    refine(g, &mut next);
    next
}

fn root_cells(g: &Graph) -> Cells {
    let mut cells = if g.vertex_count() == 0 {
        Vec::new()
    } else {
        vec![(0..g.vertex_count()).collect()]
    };
    refine(g, &mut cells);
    cells
}

fn leaf_order(cells: &Cells) -> Vec<usize> {
    cells.iter().map(|c| c[0]).collect()
}

struct Node {
    cells: Cells,
    inv: Vec<usize>,
}

/// The leftmost root-to-leaf path of the search tree.
struct FirstPath {
    nodes: Vec<Node>,
    choices: Vec<usize>,
    targets: Vec<usize>,
    leaf: Vec<usize>,
}

impl FirstPath {
    fn new(g: &Graph) -> Self {
        let mut cells = root_cells(g);
        let mut nodes = Vec::new();
        let mut choices = Vec::new();
        let mut targets = Vec::new();
        loop {
            let inv = invariant(g, &cells);
            let t = target_cell(&cells);
            nodes.push(Node {
                cells: cells.clone(),
                inv,
            });
            let Some(t) = t else { break };
            let v = cells[t][0];
            choices.push(v);
            targets.push(t);
            cells = individualize(g, &cells, t, v);
        }
        let leaf = leaf_order(&nodes.last().unwrap().cells);
        FirstPath {
            nodes,
            choices,
            targets,
            leaf,
        }
    }
}

/// Depth-first search for a leaf below `cells` whose labeling, read against
/// `reference`, is an isomorphism `from → to`.
fn find_equivalent_leaf(
    from: &Graph,
    to: &Graph,
    reference: &FirstPath,
    cells: Cells,
    depth: usize,
) -> Option<Vec<usize>> {
    if depth >= reference.nodes.len() || invariant(to, &cells) != reference.nodes[depth].inv {
        return None;
    }
    match target_cell(&cells) {
        None => {
            let leaf = leaf_order(&cells);
            let mut map = vec![0; from.vertex_count()];
            for (i, &x) in reference.leaf.iter().enumerate() {
                map[x] = leaf[i];
            }
            from.is_isomorphism_to(to, &map).then_some(map)
        }
        Some(t) => {
            for &u in &cells[t] {
                let child = individualize(to, &cells, t, u);
                if let Some(m) = find_equivalent_leaf(from, to, reference, child, depth + 1) {
                    return Some(m);
                }
            }
            None
        }
    }
}

/// Full automorphism group of `g` as a permutation group on its vertices.
pub fn aut_group(g: &Graph) -> PermGroup {
    let n = g.vertex_count();
    let path = FirstPath::new(g);
    let mut gens: Vec<Permutation> = Vec::new();
    for d in (0..path.choices.len()).rev() {
        let t = path.targets[d];
        let parent = &path.nodes[d].cells;
        let mut known = orbit_under(&gens, n, path.choices[d]);
        for &v in &parent[t] {
            if known.binary_search(&v).is_ok() {
                continue;
            }
            let child = individualize(g, parent, t, v);
            if let Some(map) = find_equivalent_leaf(g, g, &path, child, d + 1) {
                gens.push(Permutation::from_images(map).expect("leaf map is a bijection"));
                known = orbit_under(&gens, n, path.choices[d]);
            }
        }
    }
    PermGroup::new(n, gens).expect("automorphisms share the vertex count")
}

/// Returns a vertex bijection `a → b` preserving edges and non-edges.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.vertex_count() != b.vertex_count()
        || a.edge_count() != b.edge_count()
        || a.degree_sequence() != b.degree_sequence()
    {
        return None;
    }
    let path = FirstPath::new(a);
    let root = root_cells(b);
    find_equivalent_leaf(a, b, &path, root, 0)
}

/// Upper triangle of the adjacency matrix under a labeling, read column by
/// column: pairs `(i, j)` with `i < j`, ordered by `j` then `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub code: String,
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, &self.code).cmp(&(other.n, &other.code))
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Above this many vertices the canonical form comes from the search tree.
pub const EXHAUSTIVE_CANON_LIMIT: usize = 8;

/// `order[i]` is the vertex placed at position `i`.
fn code_under(g: &Graph, order: &[usize]) -> String {
    let mut s = String::with_capacity(order.len() * order.len() / 2);
    for j in 1..order.len() {
        for i in 0..j {
            s.push(if g.has_edge(order[i], order[j]) { '1' } else { '0' });
        }
    }
    s
}

/// Canonical form together with a canonical labeling `order` (position → vertex).
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let order = if g.vertex_count() <= EXHAUSTIVE_CANON_LIMIT {
        exhaustive_min_order(g)
    } else {
        search_min_order(g)
    };
    let code = code_under(g, &order);
    (
        CanonicalForm {
            n: g.vertex_count(),
            code,
        },
        order,
    )
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Lexicographically least code over all `n!` orderings, with prefix pruning.
fn exhaustive_min_order(g: &Graph) -> Vec<usize> {
    struct St<'a> {
        g: &'a Graph,
        order: Vec<usize>,
        used: Vec<bool>,
        code: Vec<u8>,
        best: Option<(Vec<u8>, Vec<usize>)>,
    }
    fn go(st: &mut St) {
        let n = st.g.vertex_count();
        let j = st.order.len();
        if j == n {
            if st.best.as_ref().map_or(true, |(b, _)| st.code < *b) {
                st.best = Some((st.code.clone(), st.order.clone()));
            }
            return;
        }
        for v in 0..n {
            if st.used[v] {
                continue;
            }
            let mark = st.code.len();
            for i in 0..j {
                st.code.push(st.g.has_edge(st.order[i], v) as u8);
            }
            let keep = match &st.best {
                None => true,
                Some((b, _)) => st.code[..] <= b[..st.code.len()],
            };
            if keep {
                st.used[v] = true;
                st.order.push(v);
                go(st);
                st.order.pop();
                st.used[v] = false;
            }
            st.code.truncate(mark);
        }
    }
    let n = g.vertex_count();
    let mut st = St {
        g,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        code: Vec::new(),
        best: None,
    };
    go(&mut st);
    st.best.map(|(_, o)| o).unwrap_or_default()
}

/// Least code over the leaves of the search tree, visiting one child per
/// orbit of the pointwise stabiliser of the current individualised vertices.
fn search_min_order(g: &Graph) -> Vec<usize> {
    let aut = aut_group(g);
    let n = g.vertex_count();
    let mut best: Option<(String, Vec<usize>)> = None;
    let mut stack: Vec<(Cells, Vec<usize>)> = vec![(root_cells(g), Vec::new())];
    while let Some((cells, prefix)) = stack.pop() {
        let Some(t) = target_cell(&cells) else {
            let order = leaf_order(&cells);
            let code = code_under(g, &order);
            if best.as_ref().map_or(true, |(b, _)| code < *b) {
                best = Some((code, order));
            }
            continue;
        };
        let stab_gens: Vec<Permutation> = if aut.is_trivial() {
            Vec::new()
        } else {
            let chain = aut.chain_with_base(&prefix);
            chain
                .levels()
                .get(prefix.len())
                .map(|l| l.generators.clone())
                .unwrap_or_default()
        };
        let mut covered = vec![false; n];
        for &v in cells[t].iter().rev() {
            if covered[v] {
                continue;
            }
            for u in orbit_under(&stab_gens, n, v) {
                covered[u] = true;
            }
            let mut next_prefix = prefix.clone();
            next_prefix.push(v);
            stack.push((individualize(g, &cells, t, v), next_prefix));
        }
    }
    best.map(|(_, o)| o).unwrap_or_default()
}
