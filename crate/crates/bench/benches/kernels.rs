//! Hot-path benchmarks: series evaluation, kernel values, the singular
//! translation quadrature, and the remainder integral that nests it.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use dunkl_core::besov::{modulus, BesovParams, QIndex};
use dunkl_core::polygauss::from_registry;
use dunkl_core::special::bessel_norm_j;
use dunkl_core::taylor::{remainder, theta_build};
use dunkl_core::translation::{convolve, translate, WKernel};
use dunkl_core::{Alpha, QuadratureSpec};

fn bench_special(c: &mut Criterion) {
    let mut group = c.benchmark_group("special");
    for z in [0.5, 8.0, 25.0] {
        group.bench_function(format!("bessel_norm_j/z={z}"), |b| {
            b.iter(|| bessel_norm_j(black_box(0.5), black_box(z)).unwrap())
        });
    }
    group.finish();
}

fn bench_kernel(c: &mut Criterion) {
    let alpha = Alpha::new(0.5).unwrap();
    let kernel = WKernel::new(alpha, 1.0, 2.0).unwrap();
    c.bench_function("kernel_w/eval", |b| {
        b.iter(|| kernel.eval(black_box(1.7)))
    });
}

fn bench_translation(c: &mut Criterion) {
    let alpha = Alpha::new(0.5).unwrap();
    let spec = QuadratureSpec::default();
    let f = from_registry("gauss", alpha).unwrap();
    c.bench_function("translate/gauss", |b| {
        b.iter(|| translate(&f, black_box(0.8), black_box(0.5), alpha, &spec).unwrap())
    });
    let g = from_registry("x2gauss", alpha).unwrap();
    c.bench_function("convolve/gauss*x2gauss", |b| {
        b.iter(|| convolve(&f, &g, black_box(0.6), alpha, &spec).unwrap())
    });
}

fn bench_taylor(c: &mut Criterion) {
    let alpha = Alpha::new(0.5).unwrap();
    let spec = QuadratureSpec::default();
    let f = from_registry("x2gauss", alpha).unwrap();
    c.bench_function("theta_build/order2", |b| {
        b.iter(|| theta_build(alpha, 2, black_box(0.8)).unwrap())
    });
    c.bench_function("remainder/k2", |b| {
        b.iter(|| remainder(&f, 2, black_box(0.8), black_box(0.4), alpha, &spec).unwrap())
    });
}

fn bench_besov(c: &mut Criterion) {
    let alpha = Alpha::new(0.5).unwrap();
    let spec = QuadratureSpec::default().scaled_tol(100.0);
    let f = from_registry("gauss", alpha).unwrap();
    let bp = BesovParams::new(alpha, 1, 2.0, QIndex::Finite(1.0), 0.5).unwrap();
    let mut group = c.benchmark_group("besov");
    group.sample_size(10);
    group.bench_function("modulus/k1", |b| {
        b.iter(|| modulus(&f, &bp, black_box(0.7), &spec).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_special,
    bench_kernel,
    bench_translation,
    bench_taylor,
    bench_besov
);
criterion_main!(benches);
