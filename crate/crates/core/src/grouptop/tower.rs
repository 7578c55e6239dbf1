use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::normalizer::{normalizer_with, SearchConfig};
use crate::error::{Error, Result};
use crate::perm::PermGroup;

/// A normaliser tower `N_0 = H < N_1 < … < N_height`, ending at a level that
/// is its own normaliser in the ambient group.
#[derive(Clone, Debug)]
pub struct Tower {
    pub levels: Vec<PermGroup>,
    pub height: usize,
    /// True once `N(levels[height]) = levels[height]` has been verified.
    pub terminated: bool,
}

impl Tower {
    pub fn terminal(&self) -> &PermGroup {
        &self.levels[self.height]
    }

    pub fn orders(&self) -> Vec<u128> {
        self.levels.iter().map(|g| g.order()).collect()
    }
}

impl Serialize for Tower {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Tower", 4)?;
        st.serialize_field("levels", &self.levels)?;
        st.serialize_field("height", &self.height)?;
        st.serialize_field("terminal_order", &self.terminal().order().to_string())?;
        let orders: Vec<String> = self.orders().iter().map(|o| o.to_string()).collect();
        st.serialize_field("level_orders", &orders)?;
        st.end()
    }
}

pub fn normaliser_tower(ambient: &PermGroup, start: &PermGroup) -> Result<Tower> {
    normaliser_tower_with(ambient, start, &SearchConfig::default())
}

/// Iterates `N ↦ N_ambient(N)` until the group stops growing.
pub fn normaliser_tower_with(
    ambient: &PermGroup,
    start: &PermGroup,
    config: &SearchConfig,
) -> Result<Tower> {
    if !start.is_subgroup_of(ambient) {
        return Err(Error::NotSubgroup);
    }
    let mut levels = vec![start.clone()];
    loop {
        let current = levels.last().unwrap();
        let next = normalizer_with(ambient, current, config)?;
        if next.order() == current.order() {
            debug_assert!(next.same_group(current));
            let height = levels.len() - 1;
            return Ok(Tower {
                levels,
                height,
                terminated: true,
            });
        }
        if levels.len() > config.max_tower_steps {
            return Err(Error::Budget {
                what: "normaliser tower steps",
                limit: config.max_tower_steps as u64,
            });
        }
        levels.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group_in_sym2_has_height_one() {
        let t = normaliser_tower(&PermGroup::symmetric(2), &PermGroup::trivial(2)).unwrap();
        assert_eq!(t.height, 1);
        assert_eq!(t.terminal().order(), 2);
        assert!(t.terminated);
    }

    #[test]
    fn ambient_in_itself_has_height_zero() {
        let s = PermGroup::symmetric(4);
        let t = normaliser_tower(&s, &s).unwrap();
        assert_eq!(t.height, 0);
    }

    #[test]
    fn serializes_terminal_order() {
        let t = normaliser_tower(&PermGroup::symmetric(2), &PermGroup::trivial(2)).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["height"], 1);
        assert_eq!(v["terminal_order"], "2");
    }
}
