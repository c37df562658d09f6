use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use helmcauchy_core::experiments::{
    example1_fields, example2_fields, Example1Method, Example2Solver, Experiment, ExperimentConfig,
};
use helmcauchy_core::quadrature::legendre_rule;

fn quadrature(c: &mut Criterion) {
    let mut g = c.benchmark_group("legendre_rule");
    for n in [5, 20, 64] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| legendre_rule(black_box(n)).unwrap()));
    }
    g.finish();
}

fn example1(c: &mut Criterion) {
    let cfg = ExperimentConfig::default_for(Experiment::Table1);
    let mut g = c.benchmark_group("example1_cell");
    g.sample_size(20);
    for (name, method) in [("truncation", Example1Method::Truncation), ("quasi_boundary", Example1Method::QuasiBoundary)] {
        g.bench_function(name, |b| b.iter(|| example1_fields(&cfg, black_box(1e-3), method).unwrap()));
    }
    g.finish();
}

fn example2(c: &mut Criterion) {
    let cfg = ExperimentConfig::example2();
    let mut g = c.benchmark_group("example2_cell");
    g.sample_size(10);
    g.bench_function("march", |b| b.iter(|| example2_fields(&cfg, black_box(1e-3), Example2Solver::March).unwrap()));
    g.bench_function("fixed_point", |b| {
        b.iter(|| example2_fields(&cfg, black_box(1e-3), Example2Solver::FixedPoint).unwrap())
    });
    g.finish();
}

criterion_group!(benches, quadrature, example1, example2);
criterion_main!(benches);
