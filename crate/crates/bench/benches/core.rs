use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use qlr_bench::{classical_pair, hermitian, noisy_bell, two_qubit_pair};
use qlr_core::locality::{build_separable_decomposition, weak_locality_search, weak_locality_search_with, SearchOptions};
use qlr_core::matcore::eig_hermitian;
use qlr_core::sampler::{estimate_gap, measure_projective};

fn eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("eig_hermitian");
    for n in [2, 4, 8, 16] {
        let h = hermitian(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| b.iter(|| eig_hermitian(black_box(h))));
    }
    group.finish();
}

fn weak_search(c: &mut Criterion) {
    let rho = noisy_bell();
    let mut group = c.benchmark_group("weak_locality_search");
    for grid in [12, 24, 48] {
        group.bench_with_input(BenchmarkId::new("serial", grid), &grid, |b, &g| {
            b.iter(|| weak_locality_search(black_box(&rho), 1e-8, g))
        });
    }
    let opts = SearchOptions { tol: 1e-8, grid: 48, jobs: 4 };
    group.bench_function("jobs4/48", |b| b.iter(|| weak_locality_search_with(black_box(&rho), &opts)));
    group.finish();
}

fn decomposition(c: &mut Criterion) {
    let rho = classical_pair();
    let verdict = weak_locality_search(&rho, 1e-8, 48).expect("search runs");
    c.bench_function("build_separable_decomposition", |b| {
        b.iter(|| build_separable_decomposition(black_box(&rho), &verdict))
    });
}

fn sampling(c: &mut Criterion) {
    let rho = noisy_bell();
    let (a, b2) = two_qubit_pair();
    let mut group = c.benchmark_group("sampler");
    group.sample_size(20);
    group.bench_function("measure_projective/1e5", |b| {
        b.iter(|| measure_projective(black_box(&rho), &a, 100_000, 1))
    });
    group.bench_function("estimate_gap/1e5", |b| b.iter(|| estimate_gap(black_box(&rho), &a, &b2, 100_000, 1)));
    group.finish();
}

criterion_group!(benches, eigensolver, weak_search, decomposition, sampling);
criterion_main!(benches);
