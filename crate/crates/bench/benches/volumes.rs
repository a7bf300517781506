use criterion::{black_box, criterion_group, criterion_main, Criterion};

use orbitvol_core::eigdensity::{lu_set_volume_exact, lu_set_volume_mc};
use orbitvol_core::ensemble::{haar_unitary, random_density_hs, random_lu_diagonalizable_state, RngStream};
use orbitvol_core::exactnum::{integrate_over_simplex, poly_density};
use orbitvol_core::linalg::eig_hermitian;
use orbitvol_core::twoqubit::{is_locally_diagonalizable, DEFAULT_DECISION_TOL};

fn bench_exact_volume(c: &mut Criterion) {
    c.bench_function("exact_volume_2x2", |b| b.iter(|| lu_set_volume_exact(black_box(2), 2)));
    c.bench_function("exact_volume_2x3", |b| b.iter(|| lu_set_volume_exact(black_box(2), 3)));
    c.bench_function("poly_density_3x3_expand_integrate", |b| {
        b.iter(|| integrate_over_simplex(&poly_density(black_box(3), 3).unwrap()))
    });
}

fn bench_mc_volume(c: &mut Criterion) {
    c.bench_function("mc_volume_2x2_100k", |b| {
        b.iter(|| lu_set_volume_mc(black_box(2), 2, 100_000, 42).unwrap())
    });
}

fn bench_decision(c: &mut Criterion) {
    let mut rng = RngStream::new(1, 0);
    let ld = random_lu_diagonalizable_state(2, 2, &mut rng);
    let generic = random_density_hs(2, 2, &mut rng);
    c.bench_function("decision_constructed_state", |b| {
        b.iter(|| is_locally_diagonalizable(black_box(&ld), DEFAULT_DECISION_TOL).unwrap())
    });
    c.bench_function("decision_random_state", |b| {
        b.iter(|| is_locally_diagonalizable(black_box(&generic), DEFAULT_DECISION_TOL).unwrap())
    });
}

fn bench_sampling(c: &mut Criterion) {
    let mut rng = RngStream::new(2, 0);
    c.bench_function("haar_unitary_8", |b| b.iter(|| haar_unitary(black_box(8), &mut rng)));
    let rho = random_density_hs(3, 3, &mut rng);
    c.bench_function("eig_hermitian_9x9", |b| b.iter(|| eig_hermitian(black_box(rho.mat()))));
}

criterion_group!(benches, bench_exact_volume, bench_mc_volume, bench_decision, bench_sampling);
criterion_main!(benches);
