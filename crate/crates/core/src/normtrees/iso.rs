use serde::{Deserialize, Serialize};

use super::tree::{Node, Tree};
use crate::error::{Error, Result};

/// A level-preserving map defined on the first `levels` levels of `source`:
/// `map[k][i]` is the target index of node `(k, i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialTreeIso {
    pub source: Tree,
    pub target: Tree,
    pub levels: usize,
    pub map: Vec<Vec<usize>>,
}

impl PartialTreeIso {
    /// The only map on `T↾1` when both trees have a single root.
    pub fn root_only(source: Tree, target: Tree) -> Result<Self> {
        let p = PartialTreeIso {
            source,
            target,
            levels: 1,
            map: vec![vec![0]],
        };
        p.check()?;
        Ok(p)
    }

    pub fn apply(&self, (k, i): Node) -> Node {
        (k, self.map[k][i])
    }

    /// Verifies that `map` is an isomorphism `S↾levels → T↾levels`.
    pub fn check(&self) -> Result<()> {
        if self.map.len() != self.levels
            || self.levels > self.source.height()
            || self.levels > self.target.height()
        {
            return Err(Error::invalid("partial map does not cover exactly the stated levels"));
        }
        for k in 0..self.levels {
            let n = self.source.level_size(k);
            if self.target.level_size(k) != n || self.map[k].len() != n {
                return Err(Error::NotIsomorphic(format!("level {k} sizes differ")));
            }
            let mut seen = vec![false; n];
            for (i, &j) in self.map[k].iter().enumerate() {
                if j >= n || seen[j] {
                    return Err(Error::NotIsomorphic(format!("level {k} map is not a bijection")));
                }
                seen[j] = true;
                if k > 0 {
                    let p = self.source.parents()[k][i].unwrap();
                    if self.target.parents()[k][j] != Some(self.map[k - 1][p]) {
                        return Err(Error::NotIsomorphic(format!(
                            "node ({k},{i}) loses its parent under the map"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// True when this is a full isomorphism `S → T`.
    pub fn is_full(&self) -> bool {
        self.levels == self.source.height()
            && self.source.height() == self.target.height()
            && self.check().is_ok()
    }
}

/// Extends `phi` level by level: the children of each source node go, in
/// index order, to the children of its image. This succeeds whenever every
/// source node has as many children as its image, as in normal trees.
pub fn extend_iso(phi: &PartialTreeIso) -> Result<PartialTreeIso> {
    phi.check()?;
    let (s, t) = (&phi.source, &phi.target);
    if s.height() != t.height() {
        return Err(Error::NotIsomorphic(format!(
            "heights {} and {} differ",
            s.height(),
            t.height()
        )));
    }
    let mut map = phi.map.clone();
    for k in phi.levels..s.height() {
        if k == 0 {
            return Err(Error::invalid("the partial map must include the root level"));
        }
        let mut level = vec![usize::MAX; s.level_size(k)];
        for i in 0..s.level_size(k - 1) {
            let src = s.children((k - 1, i));
            let dst = t.children((k - 1, map[k - 1][i]));
            if src.len() != dst.len() {
                return Err(Error::NotIsomorphic(format!(
                    "node ({},{i}) has {} children but its image has {}",
                    k - 1,
                    src.len(),
                    dst.len()
                )));
            }
            for (a, b) in src.iter().zip(&dst) {
                level[a.1] = b.1;
            }
        }
        map.push(level);
    }
    let full = PartialTreeIso {
        source: s.clone(),
        target: t.clone(),
        levels: s.height(),
        map,
    };
    full.check()?;
    Ok(full)
}

/// Number of full isomorphisms containing `phi`, counted by choosing, node by
/// node, a bijection between the children of each node and those of its image.
pub fn count_extensions(phi: &PartialTreeIso) -> Result<u128> {
    phi.check()?;
    let (s, t) = (&phi.source, &phi.target);
    if s.height() != t.height() {
        return Ok(0);
    }
    // Count isomorphisms of rooted subtrees S[x] → T[y] recursively.
    fn subtree_isos(s: &Tree, t: &Tree, x: Node, y: Node) -> u128 {
        let cs = s.children(x);
        let ct = t.children(y);
        if cs.len() != ct.len() {
            return 0;
        }
        // Permanent of the matrix of child-subtree isomorphism counts.
        let m: Vec<Vec<u128>> = cs
            .iter()
            .map(|&a| ct.iter().map(|&b| subtree_isos(s, t, a, b)).collect())
            .collect();
        permanent(&m)
    }
    let top = phi.levels - 1;
    let mut total: u128 = 1;
    for i in 0..s.level_size(top) {
        total = total.saturating_mul(subtree_isos(s, t, (top, i), phi.apply((top, i))));
    }
    Ok(total)
}

fn permanent(m: &[Vec<u128>]) -> u128 {
    fn go(m: &[Vec<u128>], row: usize, used: &mut Vec<bool>) -> u128 {
        if row == m.len() {
            return 1;
        }
        let mut sum: u128 = 0;
        for c in 0..m.len() {
            if !used[c] && m[row][c] != 0 {
                used[c] = true;
                sum = sum.saturating_add(m[row][c].saturating_mul(go(m, row + 1, used)));
                used[c] = false;
            }
        }
        sum
    }
    go(m, 0, &mut vec![false; m.len()])
}
