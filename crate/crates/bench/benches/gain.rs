use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use raa_core::optimize::{sequential_update_round, GridPoint, Objective};
use raa_core::{optimize, zf_gain, ArrayConfig, ArrayRotation, NullSteerProblem, OptimizerConfig, RadiationPattern};

fn setup() -> (ArrayConfig, NullSteerProblem) {
    (
        ArrayConfig::half_wave(8, RadiationPattern::Cosine { p: 0.5 }).unwrap(),
        NullSteerProblem::from_degrees(45.0, &[-10.0, 30.0, 60.0, 115.0]),
    )
}

fn zf(c: &mut Criterion) {
    let (arr, prob) = setup();
    let r = ArrayRotation::from_degrees(10.0, 20.0, 30.0);
    c.bench_function("zf_gain K=4", |b| b.iter(|| zf_gain(black_box(&arr), black_box(r), &prob)));
}

fn sweep(c: &mut Criterion) {
    let (arr, prob) = setup();
    c.bench_function("sequential sweep Q=360", |b| {
        b.iter(|| {
            let mut obj = Objective::new(&arr, &prob, 360);
            sequential_update_round(&mut obj, GridPoint::ORIGIN)
        })
    });
}

fn small_search(c: &mut Criterion) {
    let (arr, prob) = setup();
    let cfg = OptimizerConfig {
        q_grid: 90,
        rounds: 2,
        gs_iters: 10,
        candidates: 18,
        ..OptimizerConfig::default()
    };
    let mut group = c.benchmark_group("optimize");
    group.sample_size(20);
    group.bench_function("Q=90 L=2 T=10", |b| b.iter(|| optimize(&arr, &prob, black_box(&cfg))));
    group.finish();
}

criterion_group!(benches, zf, sweep, small_search);
criterion_main!(benches);
