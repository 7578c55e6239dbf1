use serde::{Deserialize, Serialize};

use super::stage::{delta, delta_one, StageComplex};
use crate::grouptop::{blocks_through_point, normalizer_with, perm_iso_groups, SearchConfig};
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    /// First counterexample found, if any.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionReport {
    pub n: usize,
    pub conditions: Vec<ConditionResult>,
    pub block_chain_sizes: Vec<usize>,
    pub all_passed: bool,
}

impl ConditionReport {
    pub fn get(&self, id: u8) -> Option<&ConditionResult> {
        self.conditions.iter().find(|c| c.id == id)
    }
}

fn result(id: u8, name: &str, witness: Option<String>) -> ConditionResult {
    ConditionResult {
        id,
        name: name.into(),
        passed: witness.is_none(),
        witness,
    }
}

/// `F_β on Δ_β × ∏_{β≤γ<n} F_γ on Δ¹_γ`, in stage-`n` coordinates.
pub fn predicted_level(n: usize, beta: usize, f: &[PermGroup]) -> PermGroup {
    let degree = 1 << n;
    let mut gens: Vec<Permutation> = f[beta]
        .generators()
        .iter()
        .map(|g| g.shifted(0, degree))
        .collect();
    for g in beta..n {
        gens.extend(f[g].generators().iter().map(|x| x.shifted(1 << g, degree)));
    }
    PermGroup::new(degree, gens).expect("factor degrees fit")
}

/// Orbit of a set under a group, as sorted sets.
fn set_orbit(group: &PermGroup, set: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![set.to_vec()];
    let mut i = 0;
    while i < out.len() {
        for g in group.generators() {
            let img = g.image_of_set(&out[i]);
            if !out.contains(&img) {
                out.push(img);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

/// Checks conditions (1)–(7) at stage `n`, using `s.f` as `F_n` and the
/// stored tower levels.
pub fn check_conditions(s: &StageComplex, config: &SearchConfig) -> ConditionReport {
    let n = s.n;
    let deg = 1usize << n;
    let mut f: Vec<PermGroup> = s.earlier.clone();
    f.push(s.f.clone());
    let fnn = &s.f;
    let mut conditions = Vec::new();

    conditions.push(result(
        1,
        "F_n transitive on components",
        (!fnn.is_transitive()).then(|| format!("orbit of 0 is {:?}", fnn.orbit(0))),
    ));

    let blocks = blocks_through_point(fnn, 0).unwrap_or_default();
    let expected: Vec<Vec<usize>> = (0..=n).map(delta).collect();
    let block_chain_sizes: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
    conditions.push(result(
        2,
        "blocks through v0 are exactly the Delta_beta",
        (blocks != expected).then(|| format!("blocks through 0: {blocks:?}")),
    ));

    let mut w3 = None;
    'three: for b in 0..=n {
        let classes = set_orbit(fnn, &delta(b));
        let covered: usize = classes.iter().map(|c| c.len()).sum();
        if covered != deg {
            w3 = Some(format!("images of Delta_{b} do not partition the components"));
            break;
        }
        for g in b..n {
            let d1 = delta_one(g);
            for c in &classes {
                let inside = c.iter().filter(|x| d1.contains(x)).count();
                if inside != 0 && inside != c.len() {
                    w3 = Some(format!("E_{b} class {c:?} straddles Delta1_{g}"));
                    break 'three;
                }
            }
        }
    }
    conditions.push(result(3, "each Delta1_gamma is a union of E_beta classes", w3));

    let mut w4 = None;
    let mut w5 = None;
    for b in 0..n {
        let level = match s.tower.levels.get(b) {
            Some(l) => l,
            None => {
                w4 = Some(format!("tower has no level {b}"));
                break;
            }
        };
        if w4.is_none() && !level.same_group(&predicted_level(n, b, &f)) {
            w4 = Some(format!("level {b} has order {} instead of the product", level.order()));
        }
        let mut parts = vec![delta(b)];
        parts.extend((b..n).map(delta_one));
        if w5.is_none() && !level.same_group(&fnn.stabilizer_of_parts(&parts)) {
            w5 = Some(format!("level {b} is not the partition stabiliser in F_n"));
        }
    }
    conditions.push(result(4, "level beta is the displayed product", w4));
    conditions.push(result(5, "level beta is the partition stabiliser", w5));

    let top = s.tower.levels.get(n);
    let w6 = match top {
        None => Some(format!("tower height {} is below {n}", s.tower.height)),
        Some(top) => match normalizer_with(&PermGroup::symmetric(deg), top, config) {
            Err(e) => Some(e.to_string()),
            Ok(norm) if !norm.same_group(top) => Some(format!(
                "level {n} has normaliser of order {} > {}",
                norm.order(),
                top.order()
            )),
            Ok(_) if !top.same_group(fnn) => Some(format!("level {n} differs from F_n")),
            Ok(_) => None,
        },
    };
    conditions.push(result(6, "level n is self-normalising and equals F_n", w6));

    let mut w7 = None;
    'seven: for b in 0..=n {
        for g in b + 1..=n {
            if perm_iso_groups(&f[b], &f[g]).is_some() {
                w7 = Some(format!("F_{b} and F_{g} are isomorphic permutation groups"));
                break 'seven;
            }
        }
    }
    conditions.push(result(7, "F_beta pairwise non-isomorphic", w7));

    let all_passed = conditions.iter().all(|c| c.passed);
    ConditionReport {
        n,
        conditions,
        block_chain_sizes,
        all_passed,
    }
}
