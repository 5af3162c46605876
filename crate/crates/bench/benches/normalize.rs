//! Normal-order against stratified normalization of extracted programs.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use elx_bench::{workload, workloads};
use elx_core::eal::stratified_normalize;

const FUEL: u64 = 10_000_000;

fn strategies(c: &mut Criterion) {
    let (_, all) = workloads();
    let cases: [(&str, &[u64]); 6] = [
        ("plus", &[6, 6]),
        ("mult", &[6, 6]),
        ("minus", &[6, 3]),
        ("double", &[6]),
        ("sum-id", &[6]),
        ("prod-succ", &[4]),
    ];
    let mut group = c.benchmark_group("normalize");
    for (name, inputs) in cases {
        let w = workload(&all, name);
        let label = format!("{name}{inputs:?}");
        let pure = w.pure_program(inputs);
        group.bench_with_input(BenchmarkId::new("normal-order", &label), &pure, |b, t| {
            b.iter(|| t.normalize(FUEL).expect("normalizes"))
        });
        let boxed = w.box_program(inputs);
        group.bench_with_input(BenchmarkId::new("stratified", &label), &boxed, |b, t| {
            b.iter(|| stratified_normalize(t, FUEL).expect("normalizes"))
        });
    }
    group.finish();
}

criterion_group!(benches, strategies);
criterion_main!(benches);
