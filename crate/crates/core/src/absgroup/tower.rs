use serde::{Deserialize, Serialize};

use super::aut::aut_abstract;
use super::finite::FiniteGroup;
use crate::error::{Error, Result};

/// `G_0 = G`, `G_{i+1} = Aut(G_i)`, with `embeddings[i] : G_i → G_{i+1}`
/// the map `g ↦ i_g`. The top level is complete.
#[derive(Clone, Debug)]
pub struct AutTower {
    pub levels: Vec<FiniteGroup>,
    pub embeddings: Vec<Vec<usize>>,
    pub height: usize,
    /// `Aut(G_τ) = Inn(G_τ)` was verified by computing `Aut(G_τ)`.
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutTowerSummary {
    pub height: usize,
    pub level_orders: Vec<usize>,
    pub complete: bool,
}

impl AutTower {
    pub fn summary(&self) -> AutTowerSummary {
        AutTowerSummary {
            height: self.height,
            level_orders: self.levels.iter().map(|g| g.order()).collect(),
            complete: self.complete,
        }
    }

    /// `levels[i]` into the top level through the composed embeddings.
    pub fn embedding_into_top(&self, i: usize) -> Vec<usize> {
        let mut map: Vec<usize> = (0..self.levels[i].order()).collect();
        for e in &self.embeddings[i..] {
            map = map.iter().map(|&x| e[x]).collect();
        }
        map
    }
}

pub fn automorphism_tower(g: &FiniteGroup, bound: usize) -> Result<AutTower> {
    if !g.is_centreless() {
        return Err(Error::Precondition("automorphism towers need a centreless group".into()));
    }
    let mut levels = vec![g.clone()];
    let mut embeddings = Vec::new();
    loop {
        let top = levels.last().unwrap();
        let aut = aut_abstract(top, bound)?;
        if aut.order() == top.order() {
            let height = levels.len() - 1;
            return Ok(AutTower {
                levels,
                embeddings,
                height,
                complete: true,
            });
        }
        embeddings.push(aut.inn);
        levels.push(aut.group);
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropReport {
    pub tau: usize,
    pub tower_orders: Vec<usize>,
    pub normaliser_orders: Vec<usize>,
    pub levels_match: bool,
    pub centralizers_trivial: bool,
    pub passed: bool,
}

/// Compares the automorphism tower with the normaliser tower of `G` inside
/// the top level `G_τ`, and checks that each `G_α` has trivial centraliser there.
pub fn check_prop_2_3(t: &AutTower) -> PropReport {
    let top = t.levels.last().unwrap();
    let images: Vec<Vec<usize>> = (0..t.levels.len())
        .map(|i| {
            let mut v = t.embedding_into_top(i);
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let mut chain = vec![images[0].clone()];
    loop {
        let next = top.normalizer(chain.last().unwrap());
        if next.len() == chain.last().unwrap().len() {
            break;
        }
        chain.push(next);
    }
    let levels_match = chain == images;
    let centralizers_trivial = images.iter().all(|s| top.centralizer(s).len() == 1);
    PropReport {
        tau: t.height,
        tower_orders: t.levels.iter().map(|g| g.order()).collect(),
        normaliser_orders: chain.iter().map(|c| c.len()).collect(),
        levels_match,
        centralizers_trivial,
        passed: levels_match && centralizers_trivial && t.complete,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absgroup::{named_group, DEFAULT_ORDER_BOUND};

    #[test]
    fn small_heights() {
        for (name, tau) in [("sym3", 0), ("sym4", 0), ("dihedral10", 1)] {
            let t = automorphism_tower(&named_group(name).unwrap(), DEFAULT_ORDER_BOUND).unwrap();
            assert_eq!(t.height, tau, "{name}");
            assert!(check_prop_2_3(&t).passed, "{name}");
        }
    }

    #[test]
    fn dihedral10_reaches_order_twenty() {
        let t = automorphism_tower(&named_group("dihedral10").unwrap(), DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(t.summary().level_orders, vec![10, 20]);
        assert_eq!(check_prop_2_3(&t).normaliser_orders, vec![10, 20]);
    }

    #[test]
    fn centre_is_rejected() {
        let err = automorphism_tower(&named_group("dihedral8").unwrap(), 200).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
