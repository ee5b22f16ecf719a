use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use qbases_bench::{leg_pairs, spins, z, zprime};
use qbases_core::verify::{run_suite, CheckName, Grid, SuiteOptions};
use qbases_core::{build_irrep, change_basis, coproduct_analytical, coproduct_quantum, BasisChangeSpec, DeformParam, SeriesCase};
use qbases_core::ncpoly::series_order_fit;

fn irreps(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_irrep");
    for j in spins() {
        g.bench_with_input(BenchmarkId::from_parameter(j), &j, |b, &j| b.iter(|| build_irrep(black_box(j), zprime())));
    }
    g.finish();

    let mut g = c.benchmark_group("change_basis");
    for j in spins() {
        let rep = build_irrep(j, z()).unwrap();
        let spec = BasisChangeSpec::new(j, z(), zprime()).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(j), &j, |b, _| b.iter(|| change_basis(black_box(&rep), &spec)));
    }
    g.finish();
}

fn coproducts(c: &mut Criterion) {
    let mut g = c.benchmark_group("coproduct");
    for (j1, j2) in leg_pairs() {
        let id = format!("{j1}x{j2}");
        let a = build_irrep(j1, z()).unwrap();
        let b = build_irrep(j2, z()).unwrap();
        g.bench_function(BenchmarkId::new("analytical", &id), |bch| {
            bch.iter(|| coproduct_analytical(a.triple(), b.triple(), z()))
        });
        g.bench_function(BenchmarkId::new("quantum", &id), |bch| {
            bch.iter(|| coproduct_quantum(black_box(j1), j2, z(), zprime()))
        });
    }
    g.finish();
}

fn series(c: &mut Criterion) {
    let ts = [1e-1, 3e-2, 1e-2, 3e-3, 1e-3];
    let j = qbases_core::HalfInt::from_twice(2);
    let case = SeriesCase::DkSeries { j1: j, j2: j, z0: DeformParam::real(1.0), zp0: DeformParam::real(0.5) };
    c.bench_function("series_order_fit/DK 1x1", |b| b.iter(|| series_order_fit(black_box(&case), &ts)));
}

fn suite(c: &mut Criterion) {
    let grid = Grid::default();
    let mut g = c.benchmark_group("run_suite");
    g.sample_size(10);
    g.bench_function("commutator", |b| {
        b.iter(|| run_suite(&grid, &[CheckName::Commutator], &SuiteOptions::default()))
    });
    g.finish();
}

criterion_group!(benches, irreps, coproducts, series, suite);
criterion_main!(benches);
