//! Sum-rate pipeline benchmarks: channel sampling, rate evaluation,
//! gradient checking, and full optimization runs.

use std::hint::black_box;

use bdris_bench::{components, desk_config, pattern};
use bdris_core::circuit::{assemble_susceptance, scattering_from_susceptance};
use bdris_core::sumrate::{
    effective_channels, gradient_check, optimize, sample_rayleigh, sum_rate,
};
use bdris_core::{OptimizerOptions, Precoder};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nalgebra::DMatrix;
use num_complex::Complex64;

fn bench_channel_and_rate(c: &mut Criterion) {
    let mut group = c.benchmark_group("rate_pipeline");
    let config = desk_config(16, 4, 4, 0xBE);
    group.bench_function("sample_rayleigh/16", |b| {
        b.iter(|| sample_rayleigh(black_box(&config)))
    });

    let ch = sample_rayleigh(&config);
    let pat = pattern("fully", 16);
    let b_mat = assemble_susceptance(&pat, &components(&pat)).unwrap();
    let theta = scattering_from_susceptance(&b_mat, 50.0).unwrap();
    let h = effective_channels(&ch, &theta).unwrap();
    let scale = (config.p_t / (config.m * config.k) as f64).sqrt();
    let w = Precoder::new(DMatrix::from_element(
        config.m,
        config.k,
        Complex64::new(scale, 0.0),
    ));
    group.bench_function("sum_rate/16x4x4", |b| {
        b.iter(|| sum_rate(black_box(&h), black_box(&w), config.noise_power))
    });
    group.finish();
}

fn bench_gradient_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("gradient_check");
    for &n in &[4usize, 8] {
        let config = desk_config(n, 2, 2, 0xC0 + n as u64);
        let ch = sample_rayleigh(&config);
        let pat = pattern("fully", n);
        let b0 = assemble_susceptance(&pat, &components(&pat)).unwrap();
        group.bench_with_input(BenchmarkId::new("fully", n), &n, |bench, _| {
            bench.iter(|| gradient_check(&config, black_box(&ch), &pat, &b0).unwrap())
        });
    }
    group.finish();
}

fn bench_optimize(c: &mut Criterion) {
    let mut group = c.benchmark_group("optimize");
    group.sample_size(10);
    let opts = OptimizerOptions {
        tol: 1e-3,
        max_iter: 20,
        restarts: 1,
        ..OptimizerOptions::default()
    };
    for spec in ["single", "band:3", "fully"] {
        let config = desk_config(8, 4, 4, 0xD0);
        let ch = sample_rayleigh(&config);
        let pat = pattern(spec, 8);
        group.bench_with_input(BenchmarkId::new(spec, 8), &pat, |bench, pat| {
            bench.iter(|| {
                optimize(&config, black_box(&ch), pat, &opts)
                    .unwrap()
                    .sum_rate()
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_channel_and_rate,
    bench_gradient_check,
    bench_optimize
);
criterion_main!(benches);
