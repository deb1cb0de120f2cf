//! Sequential versus parallel execution of the data-parallel sweeps.
//!
//! Without the `parallel` feature both variants run sequentially.

use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mems_core::fixtures;
use mems_core::par::Execution;
use mems_core::quantum::{self, FactorLayout};
use mems_core::sweep::{self, Sampling};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn theorem1(c: &mut Criterion) {
    let mut g = c.benchmark_group("theorem1");
    g.sample_size(10).measurement_time(Duration::from_secs(10));
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("n5_exhaustive", name), &exec, |b, &exec| {
            b.iter(|| sweep::theorem1(5, Sampling::Exhaustive, exec).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("n6_sampled_20", name), &exec, |b, &exec| {
            b.iter(|| sweep::theorem1(6, Sampling::Random { samples: 20, seed: 1 }, exec).unwrap())
        });
    }
    g.finish();
}

fn recovery_and_lattice(c: &mut Criterion) {
    let mut g = c.benchmark_group("structure");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("round_trip_n5_50", name), &exec, |b, &exec| {
            b.iter(|| sweep::round_trip(5, Sampling::Random { samples: 50, seed: 2 }, exec).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("lattice_n4_50", name), &exec, |b, &exec| {
            b.iter(|| sweep::lattice(4, Sampling::Random { samples: 50, seed: 3 }, exec).unwrap())
        });
    }
    g.finish();
}

fn quantum_seeds(c: &mut Criterion) {
    let mut g = c.benchmark_group("quantum");
    g.sample_size(10);
    let h = fixtures::k3n4();
    let layout = FactorLayout::uniform(&h, 2).unwrap();
    let seeds: Vec<u64> = (0..10).collect();
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("k3n4_10_seeds", name), &exec, |b, &exec| {
            b.iter(|| quantum::verify_class(&h, &layout, &seeds, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, theorem1, recovery_and_lattice, quantum_seeds);
criterion_main!(benches);
