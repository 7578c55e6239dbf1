use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Partition of `G`'s domain into the G-orbits, sorted by least element.
pub fn orbits(group: &PermGroup) -> Vec<Vec<usize>> {
    let n = group.degree();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let orbit = group.orbit(x);
        for &y in &orbit {
            seen[y] = true;
        }
        out.push(orbit);
    }
    out
}

/// A G-invariant partition of the domain with the induced block action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
    /// Generator `i` of the group permutes the blocks as `generator_action[i]`.
    pub generator_action: Vec<Permutation>,
}

impl BlockSystem {
    pub fn block_of(&self, x: usize) -> &[usize] {
        self.blocks
            .iter()
            .find(|b| b.contains(&x))
            .expect("blocks partition the domain")
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() <= 1 || self.blocks.iter().all(|b| b.len() == 1)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns the absorbed root if any.
    fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (keep, gone) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[gone] = keep;
        Some(gone)
    }
}

/// Finest block system in which all `seed` points lie in one block.
pub fn minimal_block_for_set(group: &PermGroup, seed: &[usize]) -> Result<BlockSystem> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = group.degree();
    let mut uf = UnionFind::new(n);
    let mut queue: Vec<(usize, usize)> = Vec::new();
    if let Some((&first, rest)) = seed.split_first() {
        for &x in rest {
            if uf.union(first, x).is_some() {
                queue.push((first, x));
            }
        }
    }
    while let Some((a, b)) = queue.pop() {
        for g in group.generators() {
            let (ga, gb) = (g.apply(a), g.apply(b));
            if uf.union(ga, gb).is_some() {
                queue.push((ga, gb));
            }
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        let r = uf.find(x);
        if index[r] == usize::MAX {
            index[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index[r]].push(x);
    }
    let mut block_index = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            block_index[x] = i;
        }
    }
    let generator_action = group
        .generators()
        .iter()
        .map(|g| {
            let images = blocks.iter().map(|b| block_index[g.apply(b[0])]).collect();
            Permutation::from_images(images).expect("blocks are permuted")
        })
        .collect();
    Ok(BlockSystem {
        blocks,
        generator_action,
    })
}

/// Finest block system with `seed.0` and `seed.1` in one block.
pub fn minimal_block(group: &PermGroup, seed: (usize, usize)) -> Result<BlockSystem> {
    minimal_block_for_set(group, &[seed.0, seed.1])
}

/// Every block of imprimitivity containing `v`, each once, sorted by size
/// (so a chain comes out ordered by inclusion).
pub fn blocks_through_point(group: &PermGroup, v: usize) -> Result<Vec<Vec<usize>>> {
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = group.degree();
    let mut found: Vec<Vec<usize>> = vec![vec![v]];
    for x in 0..n {
        if x == v {
            continue;
        }
        let b = minimal_block(group, (v, x))?.block_of(v).to_vec();
        if !found.contains(&b) {
            found.push(b);
        }
    }
    // Close under joins: every block is the join of the minimal blocks of its points.
    let mut i = 0;
    while i < found.len() {
        for j in 0..i {
            let mut seed: Vec<usize> = found[i].clone();
            seed.extend(found[j].iter().copied());
            seed.sort_unstable();
            seed.dedup();
            let join = minimal_block_for_set(group, &seed)?.block_of(v).to_vec();
            if !found.contains(&join) {
                found.push(join);
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found)
}

/// Whether `set` is a block of imprimitivity of `group`: its images under
/// the group are pairwise equal or disjoint.
pub fn is_block(group: &PermGroup, set: &[usize]) -> bool {
    if set.is_empty() {
        return false;
    }
    let mut start = set.to_vec();
    start.sort_unstable();
    let mut images: Vec<Vec<usize>> = vec![start];
    let mut i = 0;
    while i < images.len() {
        for g in group.generators() {
            let img = g.image_of_set(&images[i]);
            if !images.contains(&img) {
                images.push(img);
            }
        }
        i += 1;
    }
    let first = &images[0];
    images[1..]
        .iter()
        .all(|other| other.iter().all(|x| first.binary_search(x).is_err()))
}
