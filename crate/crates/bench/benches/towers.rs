use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use normtower::graphs::rigid_family;
use normtower::grouptop::{normalizer_with, Backend};
use normtower::projline::verify_lemma_2_4;
use normtower::towerlab::{assemble_main, StageOptions, StageTable};
use normtower::{PermGroup, SearchConfig};

fn normalisers(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalizer_d8_in_s8");
    let d8 = PermGroup::dihedral(4).shifted(0, 8);
    let s8 = PermGroup::symmetric(8);
    for backend in [Backend::Exhaustive, Backend::Backtrack] {
        let cfg = SearchConfig::with_backend(backend);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{backend:?}")), &cfg, |b, cfg| {
            b.iter(|| normalizer_with(&s8, &d8, cfg).unwrap())
        });
    }
    group.finish();
}

fn stage_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("stage_table");
    for n in 1..=3 {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| StageTable::compute(n, &SearchConfig::default()).unwrap())
        });
    }
    group.finish();
}

fn assembly(c: &mut Criterion) {
    let family = rigid_family(4).unwrap();
    let opts = StageOptions::default();
    c.bench_function("assembly_tower_l3_alpha2", |b| {
        b.iter(|| {
            let a = assemble_main(&family, 3, 2, &opts).unwrap();
            a.tower(&opts).unwrap().height
        })
    });
}

fn projective(c: &mut Criterion) {
    let cfg = SearchConfig::with_backend(Backend::Backtrack);
    c.bench_function("pgl_q16_trivial", |b| b.iter(|| verify_lemma_2_4(16, 4, &cfg).unwrap()));
}

criterion_group!(
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = normalisers, stage_tables, assembly, projective
);
criterion_main!(benches);
