use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A node by position: `(level, index within level)`.
pub type Node = (usize, usize);

/// A finite rooted forest stored level by level. `parents[k][i]` is the
/// index in level `k-1` of the parent of node `(k, i)`; level 0 has none.
/// Every level below `height` is nonempty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeRepr", into = "TreeRepr")]
pub struct Tree {
    parents: Vec<Vec<Option<usize>>>,
    children: Vec<Vec<Vec<usize>>>,
}

#[derive(Serialize, Deserialize)]
struct TreeRepr {
    height: usize,
    parents: Vec<Vec<Option<usize>>>,
}

impl TryFrom<TreeRepr> for Tree {
    type Error = Error;
    fn try_from(r: TreeRepr) -> Result<Self> {
        if r.height != r.parents.len() {
            return Err(Error::invalid(format!(
                "height {} but {} levels given",
                r.height,
                r.parents.len()
            )));
        }
        Tree::new(r.parents)
    }
}

impl From<Tree> for TreeRepr {
    fn from(t: Tree) -> Self {
        TreeRepr {
            height: t.height(),
            parents: t.parents,
        }
    }
}

impl Tree {
    pub fn new(parents: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let mut children: Vec<Vec<Vec<usize>>> = Vec::with_capacity(parents.len());
        for (k, level) in parents.iter().enumerate() {
            if level.is_empty() {
                return Err(Error::invalid(format!("level {k} is empty below the height")));
            }
            children.push(vec![Vec::new(); level.len()]);
            for (i, p) in level.iter().enumerate() {
                match (k, p) {
                    (0, None) => {}
                    (0, Some(_)) => {
                        return Err(Error::invalid(format!("level-0 node {i} has a parent")))
                    }
                    (_, None) => {
                        return Err(Error::invalid(format!("node ({k},{i}) has no parent")))
                    }
                    (_, Some(p)) => {
                        if *p >= parents[k - 1].len() {
                            return Err(Error::invalid(format!(
                                "node ({k},{i}) has parent {p} outside level {}",
                                k - 1
                            )));
                        }
                        children[k - 1][*p].push(i);
                    }
                }
            }
        }
        Ok(Tree { parents, children })
    }

    /// The tree with no nodes.
    pub fn empty() -> Self {
        Tree::new(Vec::new()).unwrap()
    }

    /// First empty level.
    pub fn height(&self) -> usize {
        self.parents.len()
    }

    pub fn level_size(&self, k: usize) -> usize {
        self.parents.get(k).map_or(0, |l| l.len())
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.parents.iter().map(|l| l.len()).collect()
    }

    pub fn node_count(&self) -> usize {
        self.parents.iter().map(|l| l.len()).sum()
    }

    pub fn parents(&self) -> &[Vec<Option<usize>>] {
        &self.parents
    }

    pub fn parent(&self, (k, i): Node) -> Option<Node> {
        self.parents[k][i].map(|p| (k - 1, p))
    }

    /// Children of a node, in index order.
    pub fn children(&self, (k, i): Node) -> Vec<Node> {
        self.children[k][i].iter().map(|&c| (k + 1, c)).collect()
    }

    /// Strict predecessors, root first.
    pub fn pred(&self, x: Node) -> Vec<Node> {
        let mut out = Vec::new();
        let mut cur = self.parent(x);
        while let Some(p) = cur {
            out.push(p);
            cur = self.parent(p);
        }
        out.reverse();
        out
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.parents
            .iter()
            .enumerate()
            .flat_map(|(k, l)| (0..l.len()).map(move |i| (k, i)))
    }

    /// `x ≤ y` in the tree order.
    pub fn le(&self, x: Node, y: Node) -> bool {
        if x.0 > y.0 {
            return false;
        }
        let mut cur = y;
        while cur.0 > x.0 {
            cur = self.parent(cur).expect("non-root has a parent");
        }
        cur == x
    }

    /// `T↾k`: the first `k` levels.
    pub fn restrict(&self, k: usize) -> Tree {
        Tree::new(self.parents[..k.min(self.height())].to_vec()).unwrap()
    }

    /// Maximal chains, each listed root first, ordered by their last node.
    pub fn branches(&self) -> Vec<Vec<Node>> {
        let mut out = Vec::new();
        for x in self.nodes() {
            if self.children(x).is_empty() {
                let mut chain = self.pred(x);
                chain.push(x);
                out.push(chain);
            }
        }
        out
    }

    /// Nodes `≥ x`, level by level.
    pub fn subtree(&self, x: Node) -> Vec<Vec<Node>> {
        let mut levels = vec![vec![x]];
        loop {
            let next: Vec<Node> = levels.last().unwrap().iter().flat_map(|&y| self.children(y)).collect();
            if next.is_empty() {
                return levels;
            }
            levels.push(next);
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Violation {
    pub clause: String,
    pub node: Option<Node>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalityReport {
    pub normal: bool,
    pub height: usize,
    pub violations: Vec<Violation>,
    /// Clauses that hold for every finite-height tree.
    pub vacuous: Vec<String>,
}

/// Checks the normal-tree clauses: linear predecessor sets, a unique root,
/// binary splitting below the top level, every node reaching every higher
/// level, and nonempty levels below the height.
pub fn validate_normal(t: &Tree) -> NormalityReport {
    let mut violations = Vec::new();
    let h = t.height();
    for x in t.nodes() {
        let pred = t.pred(x);
        if pred.len() != x.0 || pred.windows(2).any(|w| !t.le(w[0], w[1])) {
            violations.push(Violation {
                clause: "pred-linear".into(),
                node: Some(x),
                detail: "predecessors do not form a chain of the right length".into(),
            });
        }
    }
    if h > 0 && t.level_size(0) != 1 {
        violations.push(Violation {
            clause: "unique-root".into(),
            node: None,
            detail: format!("{} nodes on level 0", t.level_size(0)),
        });
    }
    for x in t.nodes() {
        if x.0 + 1 < h {
            let c = t.children(x).len();
            if c != 2 {
                violations.push(Violation {
                    clause: "binary-splitting".into(),
                    node: Some(x),
                    detail: format!("{c} immediate successors"),
                });
            }
            let reach = t.subtree(x).len();
            if x.0 + reach < h {
                violations.push(Violation {
                    clause: "extends-to-every-level".into(),
                    node: Some(x),
                    detail: format!("no successor on level {}", x.0 + reach),
                });
            }
        }
    }
    NormalityReport {
        normal: violations.is_empty(),
        height: h,
        violations,
        vacuous: vec!["limit-level-uniqueness".into(), "closure".into()],
    }
}

/// Complete binary tree with `n` levels; node `(k, i)` has parent `(k-1, i/2)`.
pub fn build_normal(n: usize) -> Tree {
    Tree::new(
        (0..n)
            .map(|k| {
                (0..1usize << k)
                    .map(|i| if k == 0 { None } else { Some(i / 2) })
                    .collect()
            })
            .collect(),
    )
    .unwrap()
}

/// Adds levels until the height is `m`, giving each top node two children.
/// Positions of existing nodes are unchanged.
pub fn end_extend(t: &Tree, m: usize) -> Result<Tree> {
    if m < t.height() {
        return Err(Error::invalid(format!(
            "cannot end-extend height {} to {m}",
            t.height()
        )));
    }
    let mut parents = t.parents().to_vec();
    while parents.len() < m {
        let next = match parents.last() {
            None => vec![None],
            Some(top) => (0..top.len() * 2).map(|i| Some(i / 2)).collect(),
        };
        parents.push(next);
    }
    Tree::new(parents)
}
