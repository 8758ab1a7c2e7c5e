//! Benchmarks for the numerically heavy paths: adaptive quadrature of the
//! field momentum, midpoint-rule phase accumulation, shielded interior
//! fields, the surface-current solver and the two-body integrator.

use abclab_core::classical_shield::{
    shielded_field, surface_current, CircularShield, SurfaceDensity,
};
use abclab_core::dynamics::{integrate, SystemState};
use abclab_core::interaction::{field_momentum_quadrature, interaction_lagrangian_fields};
use abclab_core::model::make_circular_trajectory;
use abclab_core::phases::phase_vector_potential;
use abclab_core::quantum_shield::{visibility_scan, ShieldState};
use abclab_core::{ChargeState, FluxonState, QuadratureSpec, Vec2};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_field_momentum(c: &mut Criterion) {
    let charge = ChargeState::at_rest(Vec2::ZERO, 1.0);
    let spec = QuadratureSpec::default();
    let mut group = c.benchmark_group("field_momentum_quadrature");
    for a in [1e-1, 1e-2, 1e-3] {
        let fluxon = FluxonState::at_rest(Vec2::new(2.0, 0.0), 1.0, a);
        group.bench_with_input(BenchmarkId::from_parameter(a), &a, |b, _| {
            b.iter(|| field_momentum_quadrature(black_box(&charge), black_box(&fluxon), &spec))
        });
    }
    group.finish();
}

fn bench_lagrangian_fields(c: &mut Criterion) {
    let charge = ChargeState::new(Vec2::ZERO, Vec2::new(0.0, -0.01), 1.0, 1.0).unwrap();
    let fluxon =
        FluxonState::new(Vec2::new(2.0, 0.0), Vec2::new(0.005, 0.0), 1.0, 0.01, 1.0).unwrap();
    let spec = QuadratureSpec::default();
    c.bench_function("interaction_lagrangian_fields", |b| {
        b.iter(|| interaction_lagrangian_fields(black_box(&charge), black_box(&fluxon), &spec))
    });
}

fn bench_loop_phase(c: &mut Criterion) {
    let fluxon = FluxonState::at_rest(Vec2::ZERO, 1.0, 1e-4);
    let mut group = c.benchmark_group("phase_vector_potential");
    for n in [720usize, 8192] {
        let traj = make_circular_trajectory(Vec2::ZERO, 1.0, 0.05, n, 1.0).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| phase_vector_potential(black_box(&traj), 1.0, black_box(&fluxon)))
        });
    }
    group.finish();
}

fn bench_shielded_field(c: &mut Criterion) {
    let charge = ChargeState::at_rest(Vec2::new(2.0, 0.0), 1.0);
    let shield = CircularShield::new(Vec2::ZERO, 1.0).unwrap();
    let mut group = c.benchmark_group("shielded_field");
    for n in [64usize, 256, 1024] {
        let density = SurfaceDensity::induced(&charge, &shield, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| {
                shielded_field(
                    black_box(&charge),
                    black_box(&shield),
                    black_box(&density),
                    Vec2::new(0.2, 0.1),
                )
            })
        });
    }
    group.finish();
}

fn bench_surface_current(c: &mut Criterion) {
    let shield = CircularShield::new(Vec2::ZERO, 1.0).unwrap();
    let nodes = 256;
    let omega = 0.1;
    let mut times = Vec::new();
    let mut frames = Vec::new();
    for i in 0..9 {
        let t = 0.01 * i as f64;
        let pos = 2.0 * Vec2::from_angle(omega * t);
        let charge = ChargeState::at_rest(pos, 1.0);
        times.push(t);
        frames.push(SurfaceDensity::induced(&charge, &shield, nodes).unwrap());
    }
    c.bench_function("surface_current_256_nodes", |b| {
        b.iter(|| surface_current(black_box(&times), black_box(&frames), &shield))
    });
}

fn bench_integrate(c: &mut Criterion) {
    let state = SystemState::new(
        ChargeState::new(Vec2::new(-5.0, 1.0), Vec2::new(0.01, 0.0), 1.0, 1.0).unwrap(),
        FluxonState::at_rest(Vec2::ZERO, 1.0, 1e-3),
    );
    c.bench_function("integrate_2000_steps", |b| {
        b.iter(|| integrate(black_box(&state), 0.5, 2000))
    });
}

fn bench_visibility_scan(c: &mut Criterion) {
    let state = ShieldState::two_state_half_half();
    let grid: Vec<f64> = (0..101).map(|i| i as f64 / 100.0).collect();
    c.bench_function("visibility_scan_101_points", |b| {
        b.iter(|| visibility_scan(black_box(&state), -1.0, black_box(&grid)))
    });
}

criterion_group!(
    benches,
    bench_field_momentum,
    bench_lagrangian_fields,
    bench_loop_phase,
    bench_shielded_field,
    bench_surface_current,
    bench_integrate,
    bench_visibility_scan
);
criterion_main!(benches);
