//! Timings for the enumeration oracles and the series pipelines.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use genus_core::algebra::LaurentSeries;
use genus_core::combinatorics::{enumerate_genus_table, Kind};
use genus_core::cylinder::m2_coefficient;
use genus_core::genfun_part::m_coefficient;
use genus_core::genfun_perm::{alpha_coefficient, w_per_hbar};

fn oracles(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for n in [7, 8] {
        group.bench_with_input(BenchmarkId::new("permutations", n), &n, |b, &n| {
            b.iter(|| enumerate_genus_table(black_box(n), Kind::Permutation, 9).unwrap())
        });
    }
    for n in [8, 9] {
        group.bench_with_input(BenchmarkId::new("partitions", n), &n, |b, &n| {
            b.iter(|| enumerate_genus_table(black_box(n), Kind::Partition, 10).unwrap())
        });
    }
    group.finish();
}

fn series(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    for (g, n) in [(1, 8), (2, 10), (3, 12)] {
        group.bench_with_input(BenchmarkId::new("alpha", format!("g{g}_n{n}")), &(g, n), |b, &(g, n)| {
            b.iter(|| alpha_coefficient(black_box(g), n, n as u32).unwrap())
        });
    }
    for (g, n) in [(1, 8), (2, 10)] {
        group.bench_with_input(BenchmarkId::new("m", format!("g{g}_n{n}")), &(g, n), |b, &(g, n)| {
            b.iter(|| m_coefficient(black_box(g), n, n as u32).unwrap())
        });
    }
    let x = LaurentSeries::kappa_generator(10);
    group.bench_function("hbar_form_g3_order10", |b| b.iter(|| w_per_hbar(3, black_box(&x), 10).unwrap()));
    group.finish();
}

fn cylinder(c: &mut Criterion) {
    let mut group = c.benchmark_group("cylinder");
    for (i, j) in [(2, 2), (3, 3), (3, 4)] {
        group.bench_with_input(BenchmarkId::new("m2_partition", format!("{i}_{j}")), &(i, j), |b, &(i, j)| {
            b.iter(|| m2_coefficient(Kind::Partition, black_box(i), j).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, oracles, series, cylinder);
criterion_main!(benches);
