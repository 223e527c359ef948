use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use abp_core::constructions::{
    default_alphas, nc_determinant_abp, rect_determinant_abp, s_star_abp, weak_s_star_abp,
};
use abp_core::{hadamard_abp, Rational};

fn bench_s_star(c: &mut Criterion) {
    let mut group = c.benchmark_group("s_star_abp");
    for (n, k) in [(8u32, 4u32), (10, 4), (12, 4), (12, 6)] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("n{n}_k{k}")), &(n, k), |b, &(n, k)| {
            b.iter(|| s_star_abp::<Rational>(black_box(n), black_box(k)).unwrap())
        });
    }
    group.finish();
}

fn bench_nc_determinant(c: &mut Criterion) {
    let mut group = c.benchmark_group("nc_determinant_abp");
    for k in [6u32, 8, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| nc_determinant_abp::<Rational>(black_box(k)).unwrap())
        });
    }
    group.finish();
}

fn bench_rect_determinant(c: &mut Criterion) {
    let mut group = c.benchmark_group("rect_determinant_abp");
    for (k, n) in [(4u32, 8u32), (5, 10), (6, 12)] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("k{k}_n{n}")), &(k, n), |b, &(k, n)| {
            b.iter(|| rect_determinant_abp::<Rational>(black_box(k), black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn bench_hadamard_square(c: &mut Criterion) {
    let weak = weak_s_star_abp::<Rational>(8, 6, &default_alphas(8)).unwrap();
    c.bench_function("hadamard_weak_8_6_squared", |b| {
        b.iter(|| hadamard_abp(black_box(&weak), black_box(&weak)).unwrap())
    });
}

criterion_group!(
    constructions,
    bench_s_star,
    bench_nc_determinant,
    bench_rect_determinant,
    bench_hadamard_square
);
criterion_main!(constructions);
