//! Proof checking and the EAL translation of the standard proofs.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use elx_bench::workloads;
use elx_core::eal::{check_eal, translate_to_eal};

fn kernel(c: &mut Criterion) {
    let (kernel, all) = workloads();
    let mut group = c.benchmark_group("kernel");
    for w in &all {
        group.bench_with_input(BenchmarkId::new("check", w.name), &w.script, |b, s| {
            b.iter(|| kernel.check(s).expect("checks"))
        });
        group.bench_with_input(BenchmarkId::new("eal", w.name), &w.proof, |b, p| {
            b.iter(|| check_eal(&translate_to_eal(p)).expect("valid"))
        });
    }
    group.finish();
}

criterion_group!(benches, kernel);
criterion_main!(benches);
