use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use majorkit_core::birkhoff::{random_doubly_stochastic_with, random_matrix_with};
use majorkit_core::propcheck::random_cs_preserver;
use majorkit_core::{
    birkhoff_decompose, check_strong, fuzz_preserver, hlp_witness, Domain, Operator, RelationKind, RelationSpec,
};

fn planted(n: usize, m: usize, seed: u64) -> (majorkit_core::RMatrix, majorkit_core::RMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = random_matrix_with(n, m, 4, &mut rng);
    let d = random_doubly_stochastic_with(n, n, &mut rng);
    (d.mul(&b).unwrap(), b)
}

fn strong(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_strong");
    for n in [3, 4, 5, 6] {
        let (a, b) = planted(n, 3, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &(a, b), |bench, (a, b)| {
            bench.iter(|| check_strong(black_box(a), black_box(b)).unwrap())
        });
    }
    group.finish();
}

fn hlp(c: &mut Criterion) {
    let mut group = c.benchmark_group("hlp_witness");
    for n in [8, 32] {
        let (a, b) = planted(n, 1, n as u64);
        let (a, b) = (a.column(0), b.column(0));
        group.bench_with_input(BenchmarkId::from_parameter(n), &(a, b), |bench, (a, b)| {
            bench.iter(|| hlp_witness(black_box(a), black_box(b)).unwrap())
        });
    }
    group.finish();
}

fn birkhoff(c: &mut Criterion) {
    let mut group = c.benchmark_group("birkhoff_decompose");
    for n in [4, 8] {
        let d = random_doubly_stochastic_with(n, 6, &mut ChaCha8Rng::seed_from_u64(n as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &d, |bench, d| {
            bench.iter(|| birkhoff_decompose(black_box(d)).unwrap())
        });
    }
    group.finish();
}

fn fuzz(c: &mut Criterion) {
    let g = random_cs_preserver(3, 2, &mut ChaCha8Rng::seed_from_u64(1));
    let op = Operator::Grid(g);
    let spec = RelationSpec::new(RelationKind::Strong, Domain::ColumnStochastic);
    let mut group = c.benchmark_group("fuzz_preserver");
    group.sample_size(10);
    group.bench_function("3x2 preserver, 100 trials", |bench| {
        bench.iter(|| fuzz_preserver(black_box(&op), spec, 100, 7).unwrap())
    });
    group.finish();
}

criterion_group!(benches, strong, hlp, birkhoff, fuzz);
criterion_main!(benches);
