use criterion::{criterion_group, BenchmarkId, Criterion};
use lefschetz_bench::oracle_inputs;
use lefschetz_core::oracle::{enumerate_points_with, OracleLimits};
use std::hint::black_box;

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_points");
    group.sample_size(10);
    for (name, g, q) in oracle_inputs() {
        for shards in [1, 8] {
            group.bench_with_input(BenchmarkId::new(&name, shards), &g, |b, g| {
                b.iter(|| enumerate_points_with(black_box(g), q, OracleLimits::default(), shards).expect("in limits"))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench_enumerate);
