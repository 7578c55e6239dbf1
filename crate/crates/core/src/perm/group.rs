use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::chain::StabChain;
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// A finite permutation group given by generators, with a cached
/// base and strong generating set.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Arc<StabChain>,
}

impl PermGroup {
    /// The group generated by `generators` on `degree` points. An empty list
    /// gives the trivial group.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let chain = StabChain::build(degree, &gens, &[]);
        Ok(PermGroup {
            degree,
            generators: gens,
            chain: Arc::new(chain),
        })
    }

    /// Like [`PermGroup::new`], inferring the degree from the first generator.
    pub fn from_generators(generators: Vec<Permutation>) -> Result<Self> {
        let degree = generators
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::invalid("empty generator list has no degree"))?;
        PermGroup::new(degree, generators)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn symmetric(degree: usize) -> Self {
        Self::symmetric_on(degree, &(0..degree).collect::<Vec<_>>())
    }

    /// Full symmetric group on `points`, fixing everything else.
    pub fn symmetric_on(degree: usize, points: &[usize]) -> Self {
        let mut gens = Vec::new();
        if points.len() >= 2 {
            gens.push(Permutation::transposition(degree, points[0], points[1]));
        }
        if points.len() >= 3 {
            let mut images: Vec<usize> = (0..degree).collect();
            for (i, &p) in points.iter().enumerate() {
                images[p] = points[(i + 1) % points.len()];
            }
            gens.push(Permutation::from_images(images).expect("cycle"));
        }
        PermGroup::new(degree, gens).expect("symmetric group")
    }

    /// Direct product of symmetric groups on the given disjoint cells.
    pub fn young(degree: usize, cells: &[Vec<usize>]) -> Self {
        let mut gens = Vec::new();
        for cell in cells {
            gens.extend(Self::symmetric_on(degree, cell).generators);
        }
        PermGroup::new(degree, gens).expect("young subgroup")
    }

    pub fn alternating(degree: usize) -> Self {
        let gens = (2..degree)
            .map(|k| Permutation::from_cycles(degree, &[&[0, 1, k]]).unwrap())
            .collect();
        PermGroup::new(degree, gens).expect("alternating group")
    }

    pub fn cyclic(degree: usize) -> Self {
        if degree < 2 {
            return Self::trivial(degree);
        }
        let images = (0..degree).map(|x| (x + 1) % degree).collect();
        PermGroup::new(degree, vec![Permutation::from_images(images).unwrap()]).unwrap()
    }

    /// Dihedral group of order `2k` acting on a `k`-gon.
    pub fn dihedral(k: usize) -> Self {
        if k < 3 {
            return Self::symmetric(k);
        }
        let rot = Permutation::from_images((0..k).map(|x| (x + 1) % k).collect()).unwrap();
        let refl = Permutation::from_images((0..k).map(|x| (k - x) % k).collect()).unwrap();
        PermGroup::new(k, vec![rot, refl]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    /// A stabiliser chain whose base begins with `prefix`.
    pub fn chain_with_base(&self, prefix: &[usize]) -> StabChain {
        StabChain::build(self.degree, &self.chain.strong_generators(), prefix)
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    /// `self ≤ other`, by membership of generators.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Group equality by mutual membership of generators.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    /// Whether `g` normalises this group, i.e. `g G g⁻¹ = G`.
    pub fn is_normalized_by(&self, g: &Permutation) -> bool {
        self.generators.iter().all(|s| self.contains(&s.conjugate_by(g)))
    }

    pub fn for_each_element<F: FnMut(&Permutation)>(&self, f: F) {
        self.chain.for_each_element(f)
    }

    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.order().min(1 << 20) as usize);
        self.for_each_element(|g| out.push(g.clone()));
        out
    }

    /// Orbit of a point, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        orbit_under(&self.generators, self.degree, x)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Subgroup of elements satisfying `pred`, found by enumeration.
    /// `pred` must describe a subgroup.
    pub fn subgroup_by_filter<F: Fn(&Permutation) -> bool>(&self, pred: F) -> PermGroup {
        let mut current = PermGroup::trivial(self.degree);
        self.for_each_element(|g| {
            if pred(g) && !current.contains(g) {
                let mut gens = current.generators.clone();
                gens.push(g.clone());
                current = PermGroup::new(self.degree, gens).expect("same degree");
            }
        });
        current
    }

    /// Centre, by enumeration.
    pub fn center(&self) -> PermGroup {
        let gens = self.generators.clone();
        self.subgroup_by_filter(|z| gens.iter().all(|g| &(z * g) == &(g * z)))
    }

    /// Set-wise stabiliser of every listed part, by enumeration.
    pub fn stabilizer_of_parts(&self, parts: &[Vec<usize>]) -> PermGroup {
        let sets: Vec<HashSet<usize>> = parts.iter().map(|p| p.iter().copied().collect()).collect();
        self.subgroup_by_filter(|g| {
            parts
                .iter()
                .zip(&sets)
                .all(|(p, s)| p.iter().all(|&x| s.contains(&g.apply(x))))
        })
    }

    /// Generators relabeled through a domain bijection.
    pub fn relabeled(&self, map: &[usize]) -> PermGroup {
        let gens = self.generators.iter().map(|g| g.relabeled(map)).collect();
        PermGroup::new(self.degree, gens).expect("same degree")
    }

    /// Embeds into a larger domain at `offset`.
    pub fn shifted(&self, offset: usize, new_degree: usize) -> PermGroup {
        let gens = self
            .generators
            .iter()
            .map(|g| g.shifted(offset, new_degree))
            .collect();
        PermGroup::new(new_degree, gens).expect("same degree")
    }

    /// Group generated by this group's generators and `extra`.
    pub fn join(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    /// The group induced on an invariant set `points`, renumbered 0.. in the
    /// given order.
    pub fn restricted_to(&self, points: &[usize]) -> Result<PermGroup> {
        let mut index = vec![usize::MAX; self.degree];
        for (i, &p) in points.iter().enumerate() {
            index[p] = i;
        }
        let mut gens = Vec::new();
        for g in &self.generators {
            let mut images = Vec::with_capacity(points.len());
            for &p in points {
                let j = index[g.apply(p)];
                if j == usize::MAX {
                    return Err(Error::invalid("point set is not invariant"));
                }
                images.push(j);
            }
            gens.push(Permutation::from_images(images)?);
        }
        PermGroup::new(points.len(), gens)
    }
}

pub(crate) fn orbit_under(gens: &[Permutation], degree: usize, x: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    seen[x] = true;
    let mut orbit = vec![x];
    let mut i = 0;
    while i < orbit.len() {
        let y = orbit[i];
        for g in gens {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                orbit.push(z);
            }
        }
        i += 1;
    }
    orbit.sort_unstable();
    orbit
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    degree: usize,
    generators: Vec<Permutation>,
}

impl Serialize for PermGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupRepr {
            degree: self.degree,
            generators: self.generators.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PermGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GroupRepr::deserialize(d)?;
        PermGroup::new(repr.degree, repr.generators).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cycles: &[&[usize]], n: usize) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn trivial_group_of_degree_three() {
        let g = PermGroup::new(3, vec![]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.contains(&Permutation::identity(3)));
    }

    #[test]
    fn transposition_and_four_cycle_give_sym4() {
        let g = PermGroup::new(4, vec![p(&[&[0, 1]], 4), p(&[&[0, 1, 2, 3]], 4)]).unwrap();
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn mismatched_generators_rejected() {
        let err = PermGroup::new(3, vec![Permutation::identity(4)]).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }

    #[test]
    fn standard_families() {
        assert_eq!(PermGroup::symmetric(7).order(), 5040);
        assert_eq!(PermGroup::alternating(6).order(), 360);
        assert_eq!(PermGroup::dihedral(5).order(), 10);
        assert_eq!(PermGroup::symmetric(16).order(), 20922789888000);
        assert_eq!(PermGroup::young(6, &[vec![0, 1, 2], vec![3, 4, 5]]).order(), 36);
    }

    #[test]
    fn prescribed_base_prefix() {
        let g = PermGroup::symmetric(5);
        let chain = g.chain_with_base(&[4, 2]);
        assert_eq!(&chain.base()[..2], &[4, 2]);
        assert_eq!(chain.order(), 120);
    }

    #[test]
    fn equality_is_by_membership() {
        let a = PermGroup::new(3, vec![p(&[&[0, 1]], 3), p(&[&[1, 2]], 3)]).unwrap();
        let b = PermGroup::new(3, vec![p(&[&[0, 1, 2]], 3), p(&[&[0, 2]], 3)]).unwrap();
        assert!(a.same_group(&b));
        assert!(!a.same_group(&PermGroup::alternating(3)));
    }

    #[test]
    fn json_roundtrip_rebuilds_group() {
        let g = PermGroup::dihedral(4);
        let s = serde_json::to_string(&g).unwrap();
        let h: PermGroup = serde_json::from_str(&s).unwrap();
        assert!(g.same_group(&h));
        assert_eq!(h.order(), 8);
    }
}
