//! Sequential versus rayon execution of the heavier lab workloads.
//! Without the `parallel` feature both arms run sequentially.

use chaoshide::exec::Execution;
use chaoshide::lab::{
    ciis_output_histogram, expansivity_probe, mixing_probe, sensitivity_probe, ExpansivityConfig,
    SensitivityConfig,
};
use chaoshide::strategy_gen::KeyMaterial;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn monte_carlo(c: &mut Criterion) {
    let km = KeyMaterial::from_reals(0.7172, 0.2451, 0.3, 997, 8).unwrap();
    let mut group = c.benchmark_group("ciis_histogram_2^18");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| ciis_output_histogram(&km, 64, 1 << 18, 1, exec).unwrap())
        });
    }
    group.finish();
}

fn expansivity(c: &mut Criterion) {
    let mut cfg = ExpansivityConfig::new(3, 8);
    cfg.max_period = 4;
    cfg.aperiodic_samples = 32;
    let mut group = c.benchmark_group("expansivity_n3_h8");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| expansivity_probe(&cfg, exec).unwrap())
        });
    }
    group.finish();
}

fn mixing(c: &mut Criterion) {
    let mut group = c.benchmark_group("mixing_n4_k3");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| mixing_probe(4, 3, exec).unwrap())
        });
    }
    group.finish();
}

fn sensitivity(c: &mut Criterion) {
    let cfg = SensitivityConfig::new(6, 4096, 32, 1);
    let mut group = c.benchmark_group("sensitivity_4096");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| sensitivity_probe(&cfg, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, monte_carlo, expansivity, mixing, sensitivity);
criterion_main!(benches);
