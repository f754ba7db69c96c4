use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fpp_core::building::{ball_with, DEFAULT_RADIUS_CAP};
use fpp_core::central_fiber::{flag_sweep, shared_action};
use fpp_core::par::Strategy;

const STRATEGIES: [(&str, Strategy); 2] = [("Sequential", Strategy::Sequential), ("Parallel", Strategy::Parallel)];

fn bench_ball(c: &mut Criterion) {
    let mut group = c.benchmark_group("ball p=2");
    group.sample_size(10);
    for radius in [2, 3] {
        for (name, s) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, radius), &radius, |b, &r| {
                b.iter(|| ball_with(2, r, DEFAULT_RADIUS_CAP, s).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_flag_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("flag sweep");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| flag_sweep(s)));
    }
    group.finish();
}

fn bench_homomorphism(c: &mut Criterion) {
    let action = &shared_action().action;
    let mut group = c.benchmark_group("action homomorphism");
    for (name, s) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| action.is_homomorphism(s)));
    }
    group.finish();
}

criterion_group!(benches, bench_ball, bench_flag_sweep, bench_homomorphism);
criterion_main!(benches);
