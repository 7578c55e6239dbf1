use normtower::graphs::rigid_family;
use normtower::grouptop::{perm_iso_groups, Backend, SearchConfig};
use normtower::perm::{wreath_power, CellTag, LabeledAction, PermGroup};
use normtower::towerlab::*;

fn seed() -> normtower::graphs::Graph {
    rigid_family(1).unwrap().members[0].clone()
}

#[test]
fn stage_heights_and_orders() {
    let opts = StageOptions::default();
    for n in 0..=3 {
        let s = build_stage(&seed(), n, &opts).unwrap();
        assert_eq!(stage_tower_height(&s), n);
        assert_eq!(s.f.order(), 1u128 << ((1 << n) - 1));
        assert_eq!(s.graph.vertex_count(), 6 << n);
    }
}

#[test]
fn f_is_previous_wreath_two() {
    let t = stage_table(3).unwrap();
    for n in 1..=3 {
        let wr = wreath_power(&LabeledAction::single(t.f[n - 1].clone(), CellTag::Other), 2);
        let iso = perm_iso_groups(&wr.group, &t.f[n]).expect("isomorphic");
        assert!(iso.verify(&wr.group, &t.f[n]));
    }
    assert!(t.f[1].same_group(&PermGroup::symmetric(2)));
}

#[test]
fn backends_agree_on_stages() {
    let cross = StageTable::compute(3, &SearchConfig::with_backend(Backend::CrossCheck)).unwrap();
    let cached = stage_table(3).unwrap();
    for n in 0..=3 {
        assert!(cross.f[n].same_group(&cached.f[n]));
        assert_eq!(cross.towers[n].height, n);
    }
}

#[test]
fn conditions_pass_and_tamper_fails() {
    let opts = StageOptions::default();
    for n in 0..=3 {
        let s = build_stage(&seed(), n, &opts).unwrap();
        let r = check_conditions(&s, &opts.search);
        assert!(r.all_passed, "{r:?}");
        assert_eq!(r.block_chain_sizes, (0..=n).map(|b| 1 << b).collect::<Vec<_>>());
        let t = check_conditions(&s.tampered(), &opts.search);
        if n >= 2 {
            assert!(!t.get(2).unwrap().passed);
        }
    }
}

#[test]
fn vertex_level_matches_components() {
    let opts = StageOptions::default();
    for n in 0..=3 {
        let s = build_stage(&seed(), n, &opts).unwrap();
        let v = vertex_level_check(&s).unwrap();
        assert!(v.component_action_is_symmetric && v.component_blocks_preserved, "{v:?}");
    }
}

#[test]
fn d_heights() {
    let opts = StageOptions::default();
    for n in 2..=3 {
        for m in 1..n {
            let d = build_d(n, m, &opts).unwrap();
            let r = d_report(&d, &opts).unwrap();
            assert_eq!(r.height, m, "D^{n}_{m}");
            assert!(r.wreath_level_matches, "D^{n}_{m}");
        }
    }
}

#[test]
fn assembly_and_relabel_l3() {
    let opts = StageOptions::default();
    let fam = rigid_family(4).unwrap();
    for alpha in 0..3 {
        let a = assemble_main(&fam, 3, alpha, &opts).unwrap();
        assert_eq!(a.tower(&opts).unwrap().height, alpha);
        let sub = a.sub_heights(&opts).unwrap();
        assert_eq!(sub.h, alpha);
        assert_eq!(sub.f_product, 0);
        if alpha >= 2 {
            assert_eq!(sub.b, Some(1));
        }
        for beta in 1..3 {
            let e = e_for_target(3, alpha, beta);
            for policy in [RepresentativePolicy::Min, RepresentativePolicy::Max] {
                let out = relabel_by_e(&a, &e, policy, &opts).unwrap();
                assert_eq!(out.predicted, Some(beta));
                assert_eq!(out.measured, beta, "alpha {alpha} beta {beta}");
                assert!(out.consistent());
            }
        }
    }
}

#[test]
fn relabel_l4_interval() {
    let opts = StageOptions::default();
    let fam = rigid_family(5).unwrap();
    let a = assemble_main(&fam, 4, 1, &opts).unwrap();
    assert_eq!(a.tower(&opts).unwrap().height, 1);
    let out = relabel_by_e(&a, &e_for_target(4, 1, 2), RepresentativePolicy::Min, &opts).unwrap();
    assert_eq!(out.shape, Shape::Interval);
    assert_eq!((out.predicted, out.measured), (Some(2), 2));
    assert_eq!(out.shape_witness, Some(true));
}

#[test]
fn unsupported_shape_has_no_prediction() {
    let opts = StageOptions::default();
    let fam = rigid_family(4).unwrap();
    let a = assemble_main(&fam, 3, 1, &opts).unwrap();
    let out = relabel_by_e(&a, &[vec![0, 3], vec![1], vec![2]], RepresentativePolicy::Min, &opts).unwrap();
    assert_eq!(out.shape, Shape::Other);
    assert_eq!(out.predicted, None);
    assert!(relabel_by_e(&a, &[vec![0, 1]], RepresentativePolicy::Min, &opts).is_err());
}

#[test]
fn assembly_preconditions() {
    let opts = StageOptions::default();
    let fam = rigid_family(3).unwrap();
    assert!(assemble_main(&fam, 3, 1, &opts).is_err());
    let fam = rigid_family(4).unwrap();
    assert!(assemble_main(&fam, 3, 3, &opts).is_err());
    assert!(build_d(2, 2, &opts).is_err());
    assert!(build_stage(&seed(), 4, &opts).unwrap_err().is_budget());
}

#[test]
fn non_rigid_seed_rejected() {
    let triangle = normtower::graphs::Graph::complete(3);
    assert!(build_stage(&triangle, 1, &StageOptions::default()).is_err());
}

#[test]
fn manifest_layout() {
    let m = manifest(3, 2);
    let kinds: Vec<FactorKind> = m.iter().map(|f| f.kind).collect();
    assert_eq!(kinds, vec![FactorKind::BPair, FactorKind::BPair, FactorKind::HBlock, FactorKind::FBlock]);
    assert_eq!(m.iter().map(|f| f.size).sum::<usize>(), 2 + 2 + 4 + 4);
    let m0 = manifest(3, 0);
    assert_eq!(m0.iter().map(|f| (f.seed, f.stage)).collect::<Vec<_>>(), vec![(0, 0), (1, 0), (2, 1), (3, 2)]);
}

#[test]
fn extended_stage_four() {
    let opts = StageOptions::extended();
    let s = build_stage(&seed(), 4, &opts).unwrap();
    assert_eq!(s.tower_height(), 4);
    assert_eq!(s.f.order(), 1 << 15);
    assert!(check_conditions(&s, &opts.search).all_passed);
}
