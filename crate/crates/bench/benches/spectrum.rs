use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use isopair_core::oracle::{joint_adjoint_kernel_smin, window_smin_scan, ScanOptions};
use isopair_core::regions::area_fraction;
use isopair_core::{catalog, compute_params, fringe_operator, taylor_region, Rect, DEFAULT_TOL};

fn params(c: &mut Criterion) {
    let profiles = catalog::non_simple();
    c.bench_function("compute_params/non_simple", |b| {
        b.iter(|| {
            profiles
                .iter()
                .map(|p| compute_params(black_box(p)).unwrap())
                .collect::<Vec<_>>()
        })
    });
}

fn area(c: &mut Criterion) {
    let region = taylor_region(&compute_params(&catalog::half_lines()).unwrap());
    c.bench_function("area_fraction/half_lines/1e5", |b| {
        b.iter(|| area_fraction(black_box(&region), 100_000, 0, DEFAULT_TOL))
    });
}

fn window_scan(c: &mut Criterion) {
    let spec = fringe_operator(&catalog::half_lines(), 0.5).unwrap();
    let mut group = c.benchmark_group("window_smin_scan");
    group.sample_size(10);
    for n in [256usize, 1024, 4096] {
        let opts = ScanOptions::new(vec![n]);
        group.bench_with_input(BenchmarkId::from_parameter(n), &opts, |b, opts| {
            b.iter(|| window_smin_scan(&spec, black_box(0.6), opts).unwrap())
        });
    }
    group.finish();
}

fn adjoint_kernel(c: &mut Criterion) {
    let prof = catalog::both_mixed();
    let z = Complex64::new(0.5, 0.0);
    let mut group = c.benchmark_group("joint_adjoint_kernel_smin");
    group.sample_size(10);
    for n in [20i64, 40, 80] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| joint_adjoint_kernel_smin(&prof, z, z, Rect::centered(0, 0, n)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, params, area, window_scan, adjoint_kernel);
criterion_main!(benches);
