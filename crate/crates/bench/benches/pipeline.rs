use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use syz_core::instance::parse_instance;
use syz_core::quillen_suslin::qs_transform;
use syz_core::random::{random_unimodular_matrix, PolySampler};
use syz_core::syzygy::{compute_syzygy_basis, conversion_for};
use syz_core::{Strategy, StrategyChoice};

const EX51: &str = include_str!("../../../fixtures/ex51");
const EX52: &str = include_str!("../../../fixtures/ex52");

fn fixtures(c: &mut Criterion) {
    let mut group = c.benchmark_group("basis");
    group.sample_size(10);
    for (name, text) in [("ex51", EX51), ("ex52", EX52)] {
        let inst = parse_instance(text).unwrap();
        for s in [Strategy::ViaTildeM, Strategy::ViaM, Strategy::ViaN] {
            group.bench_function(format!("{name}/{s}"), |b| {
                b.iter(|| compute_syzygy_basis(black_box(&inst), StrategyChoice::Fixed(s), 0, false).unwrap())
            });
        }
    }
    group.finish();
}

fn conversion(c: &mut Criterion) {
    let inst = parse_instance(EX52).unwrap();
    c.bench_function("conversion/ex52", |b| b.iter(|| conversion_for(black_box(&inst)).unwrap()));
}

fn completion(c: &mut Criterion) {
    let sampler = PolySampler::new(2, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let row = random_unimodular_matrix(&mut rng, 1, 3, 4, &sampler);
    let two = random_unimodular_matrix(&mut rng, 2, 4, 4, &sampler);
    c.bench_function("qs/row_1x3", |b| b.iter(|| qs_transform(black_box(&row), 0).unwrap()));
    c.bench_function("qs/matrix_2x4", |b| b.iter(|| qs_transform(black_box(&two), 0).unwrap()));
}

criterion_group!(benches, fixtures, conversion, completion);
criterion_main!(benches);
