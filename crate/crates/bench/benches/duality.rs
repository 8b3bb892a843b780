//! Timings for the hot conversion and verification kernels: reshuffling
//! between superoperator and Choi forms, the two application routes, Kraus
//! extraction, the positivity see-saw, and diagram evaluation.

use std::hint::black_box;

use choiscope_core::channels::{self, Channel, KrausSet, DEFAULT_PP_MAX_ITERS};
use choiscope_core::diagram::{self, Env};
use choiscope_core::{Mat, Seed, Tol, C64};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

/// A trace-preserving channel with `dim` Kraus operators — dense inputs
/// without special structure the kernels could shortcut.
fn dense_tp_channel(dim: usize) -> Channel {
    let kraus = KrausSet::sample_tp(dim, dim, dim, Seed::new(2026)).expect("sampling succeeds");
    Channel::from_kraus(&kraus)
}

fn bench_reshuffle(c: &mut Criterion) {
    let mut group = c.benchmark_group("reshuffle");
    for dim in [2usize, 4, 8] {
        let channel = dense_tp_channel(dim);
        let superop = channel.superop().clone();
        let choi = channel.choi().clone();
        group.bench_with_input(
            BenchmarkId::new("superop_to_choi", dim),
            &superop,
            |b, s| {
                b.iter(|| channels::superop_to_choi(black_box(s), dim, dim).unwrap());
            },
        );
        group.bench_with_input(BenchmarkId::new("choi_to_superop", dim), &choi, |b, j| {
            b.iter(|| channels::choi_to_superop(black_box(j), dim, dim).unwrap());
        });
    }
    group.finish();
}

fn bench_apply_routes(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply");
    for dim in [4usize, 8] {
        let channel = dense_tp_channel(dim);
        let rho = Mat::identity(dim).scale(C64::new(1.0 / dim as f64, 0.0));
        // Warm the superoperator cache so the route comparison is fair.
        let _ = channel.superop();
        group.bench_with_input(BenchmarkId::new("via_superop", dim), &rho, |b, r| {
            b.iter(|| channel.apply(black_box(r)).unwrap());
        });
        group.bench_with_input(BenchmarkId::new("via_choi", dim), &rho, |b, r| {
            b.iter(|| channel.apply_via_choi(black_box(r)).unwrap());
        });
    }
    group.finish();
}

fn bench_kraus_decompose(c: &mut Criterion) {
    let mut group = c.benchmark_group("kraus_decompose");
    for dim in [4usize, 8] {
        let channel = dense_tp_channel(dim);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &channel, |b, ch| {
            b.iter(|| ch.kraus_decompose(Tol::default()).unwrap());
        });
    }
    group.finish();
}

fn bench_check_pp(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_pp");
    // Positive but not completely positive: the see-saw runs its full
    // restart budget without finding a violation.
    let transpose = Channel::transpose(3).expect("valid dimension");
    group.bench_function("transpose_3", |b| {
        b.iter(|| transpose.check_pp(Tol::default(), 8, DEFAULT_PP_MAX_ITERS, Seed::new(5)));
    });
    // Not positive: restarts still all run, most converging to a witness.
    let partial = Channel::partial_transpose(2, 2).expect("valid dimensions");
    group.bench_function("partial_transpose_2x2", |b| {
        b.iter(|| partial.check_pp(Tol::default(), 8, DEFAULT_PP_MAX_ITERS, Seed::new(5)));
    });
    group.finish();
}

fn bench_diagram(c: &mut Criterion) {
    let mut group = c.benchmark_group("diagram");
    let source = "(cup(8)*id(8));(id(8)*cap(8))";
    group.bench_function("parse_snake", |b| {
        b.iter(|| diagram::parse(black_box(source)).unwrap());
    });
    let env = Env::new();
    let snake = diagram::parse(source).expect("parses");
    group.bench_function("evaluate_snake_8", |b| {
        b.iter(|| diagram::evaluate(black_box(&snake), &env).unwrap());
    });
    group.bench_function("identity_suite_d2_d3", |b| {
        b.iter(|| diagram::identity_suite(&[2, 3], 4, Seed::new(7), Tol::default()).unwrap());
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_reshuffle,
    bench_apply_routes,
    bench_kraus_decompose,
    bench_check_pp,
    bench_diagram,
);
criterion_main!(benches);
