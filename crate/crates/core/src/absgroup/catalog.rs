use super::finite::FiniteGroup;
use crate::perm::{PermGroup, Permutation};

fn affine(p: usize, mult: usize) -> PermGroup {
    let shift = Permutation::from_images((0..p).map(|x| (x + 1) % p).collect()).unwrap();
    let scale = Permutation::from_images((0..p).map(|x| x * mult % p).collect()).unwrap();
    PermGroup::new(p, vec![shift, scale]).unwrap()
}

/// `Z_3² ⋊ Z_2` with the involution acting by inversion, on the nine points of `Z_3²`.
fn generalized_dihedral_18() -> PermGroup {
    let idx = |a: usize, b: usize| 3 * (a % 3) + b % 3;
    let mk = |f: &dyn Fn(usize, usize) -> usize| {
        Permutation::from_images((0..9).map(|x| f(x / 3, x % 3)).collect()).unwrap()
    };
    let t1 = mk(&|a, b| idx(a + 1, b));
    let t2 = mk(&|a, b| idx(a, b + 1));
    let neg = mk(&|a, b| idx(3 - a, 3 - b));
    PermGroup::new(9, vec![t1, t2, neg]).unwrap()
}

fn klein_four() -> PermGroup {
    PermGroup::new(
        4,
        vec![
            Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
            Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
        ],
    )
    .unwrap()
}

fn perm_group(name: &str) -> Option<PermGroup> {
    Some(match name {
        "trivial" => PermGroup::trivial(1),
        "sym3" => PermGroup::symmetric(3),
        "sym4" => PermGroup::symmetric(4),
        "sym5" => PermGroup::symmetric(5),
        "alt4" => PermGroup::alternating(4),
        "alt5" => PermGroup::alternating(5),
        "klein4" => klein_four(),
        "dihedral8" => PermGroup::dihedral(4),
        "dihedral10" => PermGroup::dihedral(5),
        "dihedral12" => PermGroup::dihedral(6),
        "dihedral14" => PermGroup::dihedral(7),
        "dihedral18" => PermGroup::dihedral(9),
        "dihedral22" => PermGroup::dihedral(11),
        "gen-dihedral18" => generalized_dihedral_18(),
        "frobenius20" => affine(5, 2),
        "frobenius21" => affine(7, 2),
        _ => {
            let k: usize = name.strip_prefix("cyclic")?.parse().ok()?;
            if k == 0 {
                return None;
            }
            PermGroup::cyclic(k)
        }
    })
}

/// Built-in group by name: `trivial`, `sym3`–`sym5`, `alt4`, `alt5`, `klein4`,
/// `dihedral{8,10,12,14,18,22}`, `gen-dihedral18`, `frobenius20`,
/// `frobenius21`, or `cyclicN`.
pub fn named_group(name: &str) -> Option<FiniteGroup> {
    perm_group(name).and_then(|p| FiniteGroup::from_perm_group(&p).ok())
}

/// Names of the centreless groups of order at most 24, one per isomorphism type.
pub const CENTRELESS_UP_TO_24: [&str; 11] = [
    "trivial",
    "sym3",
    "dihedral10",
    "alt4",
    "dihedral14",
    "dihedral18",
    "gen-dihedral18",
    "frobenius20",
    "frobenius21",
    "dihedral22",
    "sym4",
];

pub fn centreless_catalog() -> Vec<(&'static str, FiniteGroup)> {
    CENTRELESS_UP_TO_24
        .iter()
        .map(|&name| (name, named_group(name).expect("catalog names are valid")))
        .collect()
}

/// Largest group order the catalog towers reach (`Aut` of the order-18
/// generalized dihedral group has order 432).
pub const CATALOG_ORDER_BOUND: usize = 432;
