use std::hint::black_box;

use bogograph::catalog::{certify_catalog, enumerate_cubic};
use bogograph::certify::constraint_coefficients;
use bogograph::selfcheck::{self, SelfCheckConfig};
use bogograph::Parallelism;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("parallel", Parallelism::Parallel),
];

fn catalog(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify_catalog");
    group.sample_size(10);
    for genus in [3, 4] {
        for (name, par) in MODES {
            group.bench_with_input(BenchmarkId::new(name, genus), &genus, |b, &g| {
                b.iter(|| certify_catalog(black_box(g), par).unwrap())
            });
        }
    }
    group.finish();
}

fn coefficients(c: &mut Criterion) {
    let entry = enumerate_cubic(4).unwrap().remove(0);
    let mut group = c.benchmark_group("constraint_coefficients_g4");
    group.sample_size(10);
    for (name, par) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| constraint_coefficients(black_box(&entry.pm), par).unwrap())
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let mut group = c.benchmark_group("selfcheck");
    group.sample_size(10);
    for (name, par) in MODES {
        let config = SelfCheckConfig {
            resistance_graphs: 40,
            bound_graphs: 20,
            graphs: 10,
            parallelism: par,
            ..SelfCheckConfig::default()
        };
        group.bench_function(name, |b| b.iter(|| selfcheck::run(black_box(&config))));
    }
    group.finish();
}

criterion_group!(benches, catalog, coefficients, suites);
criterion_main!(benches);
