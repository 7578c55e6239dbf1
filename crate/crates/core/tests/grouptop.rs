use std::collections::HashSet;

use normtower::grouptop::*;
use normtower::perm::{PermGroup, Permutation};
use proptest::prelude::*;

fn closure(gens: &[Permutation], n: usize) -> HashSet<Vec<usize>> {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.images().to_vec()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g * &x;
            if seen.insert(y.images().to_vec()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn all_perms(n: usize) -> Vec<Permutation> {
    fn go(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in go(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    go(n).into_iter().map(|v| Permutation::from_images(v).unwrap()).collect()
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn gens_strategy(n: usize, max: usize) -> impl Strategy<Value = Vec<Permutation>> {
    prop::collection::vec(perm_strategy(n), 0..=max)
}

/// Normaliser by scanning `Sym(n)` directly.
fn brute_normalizer_order(g: &PermGroup, n: usize) -> u128 {
    let elems = closure(g.generators(), n);
    all_perms(n)
        .iter()
        .filter(|x| {
            g.generators()
                .iter()
                .all(|s| elems.contains(s.conjugate_by(x).images()))
        })
        .count() as u128
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_matches_closure(gens in gens_strategy(6, 3)) {
        let g = PermGroup::new(6, gens.clone()).unwrap();
        let elems = closure(&gens, 6);
        prop_assert_eq!(g.order(), elems.len() as u128);
        for p in all_perms(6).iter().step_by(7) {
            prop_assert_eq!(g.contains(p), elems.contains(p.images()));
        }
    }

    #[test]
    fn backtrack_normalizer_matches_scan(gens in gens_strategy(6, 2)) {
        let g = PermGroup::new(6, gens).unwrap();
        let sym = PermGroup::symmetric(6);
        let bt = normalizer_with(&sym, &g, &SearchConfig::with_backend(Backend::Backtrack)).unwrap();
        let ex = normalizer_with(&sym, &g, &SearchConfig::with_backend(Backend::Exhaustive)).unwrap();
        prop_assert!(bt.same_group(&ex));
        prop_assert_eq!(bt.order(), brute_normalizer_order(&g, 6));
    }

    #[test]
    fn normalizer_in_smaller_ambient(gens in gens_strategy(6, 1), amb in gens_strategy(6, 2)) {
        let ambient = PermGroup::new(6, [amb, gens.clone()].concat()).unwrap();
        let g = PermGroup::new(6, gens).unwrap();
        let cc = normalizer_with(&ambient, &g, &SearchConfig::with_backend(Backend::CrossCheck));
        prop_assert!(cc.is_ok());
        let n = cc.unwrap();
        prop_assert!(n.is_subgroup_of(&ambient));
        prop_assert!(g.is_subgroup_of(&n));
    }

    #[test]
    fn conjugates_are_perm_isomorphic(gens in gens_strategy(6, 2), x in perm_strategy(6)) {
        let g = PermGroup::new(6, gens.clone()).unwrap();
        let h = PermGroup::new(6, gens.iter().map(|s| s.conjugate_by(&x)).collect()).unwrap();
        let iso = perm_iso_groups(&g, &h);
        prop_assert!(iso.is_some());
        prop_assert!(iso.unwrap().verify(&g, &h));
    }

    #[test]
    fn perm_iso_matches_relabeling_scan(a in gens_strategy(5, 2), b in gens_strategy(5, 2)) {
        let g = PermGroup::new(5, a).unwrap();
        let h = PermGroup::new(5, b).unwrap();
        let truth = all_perms(5).iter().any(|x| g.relabeled(x.images()).same_group(&h));
        prop_assert_eq!(perm_iso_groups(&g, &h).is_some(), truth);
    }

    #[test]
    fn blocks_through_zero_match_subset_scan(gens in gens_strategy(6, 2)) {
        let g = PermGroup::new(6, gens).unwrap();
        prop_assume!(g.is_transitive());
        let mut brute: Vec<Vec<usize>> = Vec::new();
        for mask in 0u32..64 {
            if mask & 1 == 0 {
                continue;
            }
            let set: Vec<usize> = (0..6).filter(|i| mask >> i & 1 == 1).collect();
            let images = closure(g.generators(), 6);
            let ok = images.iter().all(|img| {
                let moved: HashSet<usize> = set.iter().map(|&x| img[x]).collect();
                let inter = set.iter().filter(|x| moved.contains(x)).count();
                inter == 0 || inter == set.len()
            });
            if ok {
                brute.push(set);
            }
        }
        brute.sort_by_key(|b| (b.len(), b.clone()));
        let mut found = blocks_through_point(&g, 0).unwrap();
        found.sort_by_key(|b| (b.len(), b.clone()));
        prop_assert_eq!(&found, &brute);
        for b in &found {
            prop_assert!(is_block(&g, b));
        }
    }
}

#[test]
fn composition_is_left_action() {
    let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
    let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
    assert_eq!(a.compose(&b).unwrap().images(), &[1, 2, 0]);
}

#[test]
fn towers_in_sym4() {
    let t = normaliser_tower(&PermGroup::symmetric(4), &PermGroup::cyclic(4)).unwrap();
    assert_eq!(t.orders(), vec![4, 8]);
    let v = PermGroup::new(4, vec![Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap()]).unwrap();
    let t = normaliser_tower(&PermGroup::symmetric(4), &v).unwrap();
    assert_eq!(t.orders(), vec![2, 8]);
}
