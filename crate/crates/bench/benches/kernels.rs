//! Kernel benchmarks: the two advection paths across cutoffs, one
//! integrator step, and the Riccati control solves.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mhd_core::bilinear::{mhd_advect, ConstantsEntry, ConstantsTable, PseudoSpectral};
use mhd_core::certify::{riccati_certify, riccati_closed_form, EstimatorSet};
use mhd_core::integrate::{integrate, SolverConfig};
use mhd_core::spectral::random_pair;

fn advection_paths(c: &mut Criterion) {
    let mut group = c.benchmark_group("mhd_advect");
    for &(d, m) in &[(2usize, 2i32), (2, 4), (2, 8), (3, 2), (3, 4)] {
        let u = random_pair(7, d, m, 1.0).unwrap();
        group.bench_with_input(BenchmarkId::new("direct", format!("d{d}_M{m}")), &u, |b, u| {
            b.iter(|| mhd_advect(u, u).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("fft_self", format!("d{d}_M{m}")), &u, |b, u| {
            let mut engine = PseudoSpectral::for_product(d, m, m, m);
            b.iter(|| engine.mhd_self_advect(u, m).unwrap())
        });
    }
    group.finish();
}

fn integrator_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("integrate_100_steps");
    for &(d, m) in &[(2usize, 4i32), (3, 2)] {
        let u0 = random_pair(11, d, m, 1.5).unwrap().scaled(0.1);
        let config = SolverConfig {
            dim: d,
            cutoff: m,
            nu: 0.1,
            eta: 0.1,
            dt: 1e-3,
            t_end: 0.1,
            recorded_orders: vec![0.0],
            record_stride: 100,
        };
        group.bench_function(format!("d{d}_M{m}"), |b| {
            b.iter(|| integrate(&u0, &config).unwrap())
        });
    }
    group.finish();
}

fn riccati_solves(c: &mut Criterion) {
    let n = 4.0;
    let v = 1.0 / std::f64::consts::SQRT_2;
    let table = ConstantsTable::new(2, vec![ConstantsEntry { p: n, n, k: v, g: v }]).unwrap();
    let times: Vec<f64> = (0..=2000).map(|i| i as f64 * 1e-3).collect();
    let len = times.len();
    let mut est = EstimatorSet::new(times.clone()).unwrap();
    est.set_growth(n, times.iter().map(|&t| 0.1 * (-0.4 * t).exp()).collect())
        .unwrap();
    est.set_growth(n + 1.0, times.iter().map(|&t| 0.2 * (-0.5 * t).exp()).collect())
        .unwrap();
    est.set_delta(n, 0.05).unwrap();
    assert_eq!(est.times().len(), len);

    c.bench_function("riccati_ode_2k_grid", |b| {
        b.iter(|| riccati_certify(&est, n, 1.0, &table).unwrap())
    });
    c.bench_function("riccati_closed_form_2k_grid", |b| {
        b.iter(|| riccati_closed_form(&est, n, 1.0, &table).unwrap())
    });
}

criterion_group!(benches, advection_paths, integrator_step, riccati_solves);
criterion_main!(benches);
