use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use padorb_bench::{campaign_tuple, disk_model, henon};
use padorb_core::arc::mahler_coefficients;
use padorb_core::dynamics::{disk_linearization, orbit_of_point};
use padorb_core::sample;
use padorb_core::series::verify_order_bound;

fn series_kernels(c: &mut Criterion) {
    let tuple = campaign_tuple();
    c.bench_function("compose g=2 p=5 e=2 cap=12", |b| {
        b.iter(|| black_box(tuple.as_series().compose(tuple.as_series()).unwrap()))
    });

    let mut group = c.benchmark_group("order-bound");
    group.sample_size(10);
    group.bench_function("verify m=2400 g=2 p=5 e=2", |b| {
        b.iter(|| black_box(verify_order_bound(tuple.as_series()).unwrap()))
    });
    group.finish();
}

fn orbit_kernels(c: &mut Criterion) {
    let map = henon(5, 3);
    c.bench_function("orbit henon p=5 k=3", |b| {
        b.iter(|| black_box(orbit_of_point(&map, &[0, 0], 3).unwrap()))
    });
}

fn arc_kernels(c: &mut Criterion) {
    let (map, params) = disk_model();
    let disk = disk_linearization(&map, &[0, 0], params.precision()).unwrap();
    let beta = vec![
        sample::random_scalar(params, &mut sample::case_rng(0xBE, 2)),
        sample::random_scalar(params, &mut sample::case_rng(0xBE, 3)),
    ];
    c.bench_function("mahler coefficients J=32 g=2 p=5", |b| {
        b.iter(|| black_box(mahler_coefficients(disk.as_series(), &beta, 32, 1).unwrap()))
    });
}

criterion_group!(benches, series_kernels, orbit_kernels, arc_kernels);
criterion_main!(benches);
