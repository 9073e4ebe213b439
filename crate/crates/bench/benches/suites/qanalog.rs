use criterion::{criterion_group, BenchmarkId, Criterion};
use lefschetz_core::qanalog::{gauss_binomial, MonomialMatrix};
use std::hint::black_box;

fn bench_gauss_binomial(c: &mut Criterion) {
    let mut group = c.benchmark_group("gauss_binomial");
    for n in [8, 16, 32] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| gauss_binomial(black_box(n), n / 2).expect("k <= n"))
        });
    }
    group.finish();
}

fn bench_monomial_enumeration(c: &mut Criterion) {
    c.bench_function("monomial_matrices(4,3)", |b| b.iter(|| MonomialMatrix::enumerate(black_box(4), 3)));
}

criterion_group!(benches, bench_gauss_binomial, bench_monomial_enumeration);
