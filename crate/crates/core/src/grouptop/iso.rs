//! Permutation-group isomorphism: a bijection `φ` of domains and a group
//! isomorphism `f` with `f(g)(φ(x)) = φ(g(x))`.

use serde::{Deserialize, Serialize};

use super::blocks::orbits;
use super::normalizer::{OrbitalMatch, Orbitals};
use crate::perm::{LabeledAction, PermGroup, Permutation};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PermIso {
    /// `point_map[x] = φ(x)`.
    pub point_map: Vec<usize>,
    /// `f` on the generators of the source group: `(g, φ g φ⁻¹)`.
    pub generator_images: Vec<(Permutation, Permutation)>,
}

impl PermIso {
    /// `f(g) = φ g φ⁻¹`.
    pub fn map_element(&self, g: &Permutation) -> Permutation {
        g.relabeled(&self.point_map)
    }

    pub fn inverse(&self, target: &PermGroup) -> PermIso {
        let mut inv = vec![0; self.point_map.len()];
        for (x, &y) in self.point_map.iter().enumerate() {
            inv[y] = x;
        }
        let generator_images = target
            .generators()
            .iter()
            .map(|h| (h.clone(), h.relabeled(&inv)))
            .collect();
        PermIso {
            point_map: inv,
            generator_images,
        }
    }

    /// Checks conditions (i)–(iii) against the two groups.
    pub fn verify(&self, source: &PermGroup, target: &PermGroup) -> bool {
        if source.degree() != target.degree() || source.order() != target.order() {
            return false;
        }
        let mut seen = vec![false; target.degree()];
        for &y in &self.point_map {
            if y >= seen.len() || seen[y] {
                return false;
            }
            seen[y] = true;
        }
        source.generators().iter().all(|g| {
            let fg = self.map_element(g);
            target.contains(&fg)
                && (0..g.degree()).all(|x| fg.apply(self.point_map[x]) == self.point_map[g.apply(x)])
        })
    }
}

/// Finds a permutation-group isomorphism between the two actions, or `None`.
pub fn perm_iso(a: &LabeledAction, b: &LabeledAction) -> Option<PermIso> {
    perm_iso_groups(&a.group, &b.group)
}

pub fn perm_iso_groups(g: &PermGroup, h: &PermGroup) -> Option<PermIso> {
    let n = g.degree();
    if n != h.degree() || g.order() != h.order() {
        return None;
    }
    let sizes = |grp: &PermGroup| {
        let mut s: Vec<usize> = orbits(grp).iter().map(|o| o.len()).collect();
        s.sort_unstable();
        s
    };
    if sizes(g) != sizes(h) {
        return None;
    }
    let og = Orbitals::new(g);
    let oh = Orbitals::new(h);
    if og.sorted_sizes() != oh.sorted_sizes() {
        return None;
    }
    let mut order = g.base();
    for x in 0..n {
        if !order.contains(&x) {
            order.push(x);
        }
    }
    let mut search = IsoSearch {
        g,
        h,
        order,
        images: vec![0; n],
        used: vec![false; n],
        matcher: OrbitalMatch::new(&og, &oh),
    };
    if n == 0 {
        return search.leaf();
    }
    // Composing with elements of h, the first image can be any h-orbit representative.
    for orbit in orbits(h) {
        let y = orbit[0];
        if let Some(found) = search.try_point(0, y) {
            return Some(found);
        }
    }
    None
}

struct IsoSearch<'a> {
    g: &'a PermGroup,
    h: &'a PermGroup,
    order: Vec<usize>,
    images: Vec<usize>,
    used: Vec<bool>,
    matcher: OrbitalMatch<'a>,
}

impl IsoSearch<'_> {
    fn try_point(&mut self, j: usize, y: usize) -> Option<PermIso> {
        let mark = self.matcher.mark();
        self.images[j] = y;
        let mut result = None;
        if self.matcher.bind_point(&self.order, &self.images, j) {
            self.used[y] = true;
            result = self.dfs(j + 1);
            self.used[y] = false;
        }
        self.matcher.undo(mark);
        result
    }

    fn dfs(&mut self, j: usize) -> Option<PermIso> {
        if j == self.order.len() {
            return self.leaf();
        }
        for y in 0..self.images.len() {
            if self.used[y] {
                continue;
            }
            if let Some(found) = self.try_point(j, y) {
                return Some(found);
            }
        }
        None
    }

    fn leaf(&self) -> Option<PermIso> {
        let n = self.order.len();
        let mut point_map = vec![0; n];
        for (k, &x) in self.order.iter().enumerate() {
            point_map[x] = self.images[k];
        }
        let mut generator_images = Vec::new();
        for s in self.g.generators() {
            let t = s.relabeled(&point_map);
            if !self.h.contains(&t) {
                return None;
            }
            generator_images.push((s.clone(), t));
        }
        Some(PermIso {
            point_map,
            generator_images,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{direct_product, wreath_power, CellTag};

    fn single(g: PermGroup) -> LabeledAction {
        LabeledAction::single(g, CellTag::Other)
    }

    #[test]
    fn reflexive_identity_witness() {
        let a = single(PermGroup::dihedral(5));
        let iso = perm_iso(&a, &a).unwrap();
        assert!(iso.verify(&a.group, &a.group));
    }

    #[test]
    fn product_versus_wreath_not_isomorphic() {
        let s2 = single(PermGroup::symmetric(2));
        let prod = direct_product(&[s2.clone(), s2.clone()]);
        let wr = wreath_power(&s2, 2);
        assert!(perm_iso(&prod, &wr).is_none());
    }

    #[test]
    fn conjugate_subgroups_are_isomorphic_and_witness_inverts() {
        let g = PermGroup::new(5, vec![Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap()]).unwrap();
        let h = PermGroup::new(5, vec![Permutation::from_cycles(5, &[&[4, 2, 3]]).unwrap()]).unwrap();
        let iso = perm_iso_groups(&g, &h).unwrap();
        assert!(iso.verify(&g, &h));
        assert!(iso.inverse(&h).verify(&h, &g));
    }

    #[test]
    fn same_abstract_group_different_action() {
        // Klein four: regular on 4 points versus <(01),(23)>.
        let regular = PermGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
        )
        .unwrap();
        let intransitive = PermGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(4, &[&[2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        assert!(perm_iso_groups(&regular, &intransitive).is_none());
    }
}
