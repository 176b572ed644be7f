//! Sequential vs rayon for the hot loops.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dotpairs::bounds::{density_scan_with, ScanPlan};
use dotpairs::constructions::random_set;
use dotpairs::counting::{dot_histogram_with, fast_count_with};
use dotpairs::{Ring, Strategy};

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn fast_count(c: &mut Criterion) {
    let ring = Arc::new(Ring::prime_field(101).unwrap());
    let mut group = c.benchmark_group("fast_count");
    for n in [1000, 5000] {
        let set = random_set(ring.clone(), 2, n, 1).unwrap();
        for (name, strategy) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &set, |b, set| {
                b.iter(|| fast_count_with(black_box(set), 1, 1, strategy))
            });
        }
    }
    group.finish();
}

fn dot_histogram(c: &mut Criterion) {
    let ring = Arc::new(Ring::residue_ring(3, 3).unwrap());
    let set = random_set(ring, 3, 2000, 2).unwrap();
    let mut group = c.benchmark_group("dot_histogram");
    for (name, strategy) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| dot_histogram_with(black_box(&set), strategy))
        });
    }
    group.finish();
}

fn density_scan(c: &mut Criterion) {
    let plan = ScanPlan {
        ring: Arc::new(Ring::prime_field(101).unwrap()),
        dim: 2,
        exponents: vec![1.2, 1.4, 1.6],
        trials: 4,
        seed: 42,
        alpha: 1,
        beta: 1,
    };
    let mut group = c.benchmark_group("density_scan");
    group.sample_size(10);
    for (name, strategy) in STRATEGIES {
        group.bench_function(name, |b| {
            b.iter(|| density_scan_with(black_box(&plan), strategy))
        });
    }
    group.finish();
}

criterion_group!(benches, fast_count, dot_histogram, density_scan);
criterion_main!(benches);
