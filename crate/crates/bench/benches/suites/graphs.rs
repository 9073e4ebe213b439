use criterion::{criterion_group, BenchmarkId, Criterion};
use lefschetz_bench::graph_ladder;
use lefschetz_core::{class_of, surgery};
use std::hint::black_box;

fn bench_class_of(c: &mut Criterion) {
    let mut group = c.benchmark_group("class_of");
    for (name, g) in graph_ladder() {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &g, |b, g| b.iter(|| class_of(black_box(g))));
    }
    group.finish();
}

fn bench_surgery(c: &mut Criterion) {
    let mut group = c.benchmark_group("surgery");
    for (name, g) in graph_ladder() {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &g, |b, g| {
            b.iter(|| surgery(black_box(g)).expect("connected"))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_class_of, bench_surgery);
