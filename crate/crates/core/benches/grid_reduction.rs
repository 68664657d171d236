//! Parallel vs sequential Brillouin-zone reductions. The parallel path must
//! be bit-identical to the sequential one (chunked fold order), so these
//! benches only compare speed.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use hubbard_dynamics::bose::{
    equilibrium_correlator, integrate_modes, quench_correlator_series, BoseParams,
    EquilibriumKind, QuenchKind, QuenchProtocol,
};
use hubbard_dynamics::ksum;
use hubbard_dynamics::{MomentumGrid, Separation};

fn bench_depletion_sum(c: &mut Criterion) {
    let grid = MomentumGrid::thermodynamic(3, 64).unwrap();
    let params = BoseParams::new(0.14, 1.0).unwrap();
    let term = |i: usize| {
        let t_k = grid.structure_factor(i);
        let wsq = 1.0 - 6.0 * 0.14 * t_k + 0.14 * 0.14 * t_k * t_k;
        grid.weight(i) * 4.0 * 0.14 * 0.14 * t_k * t_k / wsq
    };

    let mut group = c.benchmark_group("equilibrium_depletion_64^3");
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(ksum::sum_f64_sequential(grid.len(), term)))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(ksum::sum_f64(grid.len(), term)))
    });
    group.bench_function("full_operation", |b| {
        b.iter(|| {
            equilibrium_correlator(
                &params,
                &grid,
                EquilibriumKind::OnSite,
                &Separation::zero(3),
            )
            .unwrap()
        })
    });
    group.finish();
}

fn bench_quench_series(c: &mut Criterion) {
    let params = BoseParams::new(0.14, 1.0).unwrap();
    let d = Separation::new(vec![1, 0, 0]);
    let times: Vec<f64> = (0..200).map(|i| 0.25 * i as f64).collect();
    let mut group = c.benchmark_group("quench_series");
    for points in [16usize, 32] {
        let grid = MomentumGrid::thermodynamic(3, points).unwrap();
        group.bench_with_input(
            BenchmarkId::new("hp_200_times", points),
            &grid,
            |b, grid| {
                b.iter(|| {
                    quench_correlator_series(&params, grid, QuenchKind::HolePair, &d, &times)
                })
            },
        );
    }
    group.finish();
}

fn bench_mode_integration(c: &mut Criterion) {
    let protocol = QuenchProtocol::Sudden {
        j_initial: 0.0,
        j_final: 0.14,
    };
    let mut group = c.benchmark_group("rk4_modes");
    group.sample_size(10);
    for points in [8usize, 16] {
        let grid = MomentumGrid::thermodynamic(3, points).unwrap();
        group.bench_with_input(
            BenchmarkId::new("t_end_5", points),
            &grid,
            |b, grid| b.iter(|| integrate_modes(&protocol, 1.0, grid, 5.0, 1e-3, 1000)),
        );
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_depletion_sum,
    bench_quench_series,
    bench_mode_integration
);
criterion_main!(benches);
