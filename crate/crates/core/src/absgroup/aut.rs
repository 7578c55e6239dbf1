use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::finite::FiniteGroup;
use crate::error::{Error, Result};

/// Default largest `|G|` accepted by [`aut_abstract`].
pub const DEFAULT_ORDER_BOUND: usize = 200;

/// `Aut(G)` as a table group whose element `i` is the map `maps[i]`, with
/// composition `(a ∘ b)(x) = a(b(x))`, and the embedding `g ↦ i_g`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub group: FiniteGroup,
    pub maps: Vec<Vec<usize>>,
    /// `inn[g]` is the index of `i_g : x ↦ g x g⁻¹`.
    pub inn: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutSummary {
    pub order: usize,
    pub inner_order: usize,
    pub all_inner: bool,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn inner(&self) -> Vec<usize> {
        let mut v = self.inn.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn summary(&self) -> AutSummary {
        let inner_order = self.inner().len();
        AutSummary {
            order: self.order(),
            inner_order,
            all_inner: inner_order == self.order(),
        }
    }
}

struct Search<'a> {
    g: &'a FiniteGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    images: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Extends `s_i ↦ t_i` (first `k` generators) along the Cayley graph of
    /// `⟨s_1, …, s_k⟩`; fails on an inconsistency or a collision.
    fn extend(&self, k: usize) -> Option<Vec<usize>> {
        let g = self.g;
        let n = g.order();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[g.identity()] = g.identity();
        used[g.identity()] = true;
        let mut queue = vec![g.identity()];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for i in 0..k {
                let y = g.mul(x, self.gens[i]);
                let fy = g.mul(map[x], self.images[i]);
                if map[y] == usize::MAX {
                    if used[fy] {
                        return None;
                    }
                    map[y] = fy;
                    used[fy] = true;
                    queue.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn go(&mut self, k: usize) {
        if k == self.gens.len() {
            if let Some(map) = self.extend(k) {
                if map.iter().all(|&y| y != usize::MAX) {
                    self.found.push(map);
                }
            }
            return;
        }
        for idx in 0..self.candidates[k].len() {
            let t = self.candidates[k][idx];
            self.images[k] = t;
            if self.extend(k + 1).is_some() {
                self.go(k + 1);
            }
        }
    }
}

/// All automorphisms of `g`, found by backtracking over images of a greedy
/// generating set. Images must match (element order, class size), and each
/// partial assignment must extend consistently to the subgroup it generates.
pub fn aut_abstract(g: &FiniteGroup, bound: usize) -> Result<AutGroup> {
    if g.order() > bound {
        return Err(Error::Budget {
            what: "group order for automorphism search",
            limit: bound as u64,
        });
    }
    let n = g.order();
    let fp: Vec<(usize, usize)> = (0..n).map(|x| (g.element_order(x), g.class_size(x))).collect();
    let gens = g.generators().to_vec();
    let candidates = gens
        .iter()
        .map(|&s| (0..n).filter(|&x| fp[x] == fp[s]).collect())
        .collect();
    let mut search = Search {
        g,
        images: vec![0; gens.len()],
        gens,
        candidates,
        found: Vec::new(),
    };
    search.go(0);
    let mut maps = search.found;
    maps.sort();
    let index: HashMap<&Vec<usize>, usize> = maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let inn: Vec<usize> = (0..n)
        .map(|a| {
            let m: Vec<usize> = (0..n).map(|x| g.conj(a, x)).collect();
            index[&m]
        })
        .collect();
    let group = FiniteGroup::from_elements(&maps, |a, b| b.iter().map(|&x| a[x]).collect());
    Ok(AutGroup { group, maps, inn })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroup;

    fn table(p: PermGroup) -> FiniteGroup {
        FiniteGroup::from_perm_group(&p).unwrap()
    }

    #[test]
    fn trivial_and_sym3() {
        assert_eq!(aut_abstract(&table(PermGroup::trivial(1)), 200).unwrap().order(), 1);
        let a = aut_abstract(&table(PermGroup::symmetric(3)), 200).unwrap();
        assert_eq!(a.order(), 6);
        assert!(a.summary().all_inner);
    }

    #[test]
    fn klein_four_has_sym3() {
        let v4 = PermGroup::new(
            4,
            vec![
                crate::perm::Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                crate::perm::Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(aut_abstract(&table(v4), 200).unwrap().order(), 6);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(aut_abstract(&table(PermGroup::symmetric(4)), 10).unwrap_err().is_budget());
    }
}
