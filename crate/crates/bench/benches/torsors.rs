use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nori_core::examples::{build_heisenberg, build_normality_counterexample, build_real_roots, real_system};
use nori_core::systems::inverse_limit;
use nori_core::torsor::{hom_set, saturate};

fn saturation(c: &mut Criterion) {
    let mut group = c.benchmark_group("saturate");
    for l in [5, 7, 11] {
        let t = Arc::new(build_heisenberg(l).unwrap());
        group.bench_with_input(BenchmarkId::new("heisenberg", l), &t, |b, t| b.iter(|| saturate(t).unwrap()));
    }
    group.finish();
}

fn homs(c: &mut Criterion) {
    let p12 = Arc::new(build_real_roots(12).unwrap());
    let p4 = Arc::new(build_real_roots(4).unwrap());
    c.bench_function("hom_set real 12 -> 4", |b| b.iter(|| hom_set(&p12, &p4).unwrap()));
}

fn limits(c: &mut Criterion) {
    let mut group = c.benchmark_group("inverse_limit");
    for bound in [6, 12] {
        let sys = real_system(bound).unwrap();
        group.bench_with_input(BenchmarkId::new("real", bound), &sys, |b, s| b.iter(|| inverse_limit(s).unwrap()));
    }
    group.finish();
}

fn counterexample(c: &mut Criterion) {
    let mut group = c.benchmark_group("normality");
    group.sample_size(10);
    group.bench_function("build n=2", |b| b.iter(|| build_normality_counterexample(2).unwrap()));
    group.finish();
}

criterion_group!(benches, saturation, homs, limits, counterexample);
criterion_main!(benches);
