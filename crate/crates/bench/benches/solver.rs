//! Solver-stack benchmarks: derivative application, full spectra on both
//! paths, the ground-state fast path, and scalar arithmetic.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hfqm_core::deriv::LaplacianVariant;
use hfqm_core::grid::{embed_total, make_grid};
use hfqm_core::operators::{
    assemble_hamiltonian, eigendecompose, lowest_eigenpair, Potential, DEFAULT_SEED,
};
use hfqm_core::scalar::EuclideanScalar;

fn bench_derivative_apply(c: &mut Criterion) {
    let mut group = c.benchmark_group("derivative_apply");
    for n in [501usize, 2001] {
        let g = make_grid(n, 0.05).unwrap();
        let d = hfqm_core::deriv::build_derivative(&g);
        let u = embed_total(|x| (0.3 * x).sin(), &g).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| black_box(d.apply(&u)))
        });
    }
    group.finish();
}

fn bench_full_spectrum_bisection(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectrum_bisection");
    group.sample_size(10);
    for n in [251usize, 1001] {
        let g = make_grid(n, 0.05).unwrap();
        let ham = assemble_hamiltonian(
            &g,
            LaplacianVariant::Compact,
            &Potential::delta_at_origin(&g, -2.0),
        )
        .unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| black_box(ham.periodic_tridiag().unwrap().eigenvalues()))
        });
    }
    group.finish();
}

fn bench_full_decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigendecompose");
    group.sample_size(10);
    let g = make_grid(501, 0.05).unwrap();
    let compact = assemble_hamiltonian(
        &g,
        LaplacianVariant::Compact,
        &Potential::delta_at_origin(&g, -2.0),
    )
    .unwrap();
    group.bench_function("compact_n501", |b| {
        b.iter(|| black_box(eigendecompose(&compact, DEFAULT_SEED).unwrap()))
    });
    let g2 = make_grid(101, 0.1).unwrap();
    let literal =
        assemble_hamiltonian(&g2, LaplacianVariant::PaperLiteral, &Potential::None).unwrap();
    group.bench_function("jacobi_n101", |b| {
        b.iter(|| black_box(eigendecompose(&literal, DEFAULT_SEED).unwrap()))
    });
    group.finish();
}

fn bench_ground_state_fast_path(c: &mut Criterion) {
    let g = make_grid(2001, 0.025).unwrap();
    let ham = assemble_hamiltonian(
        &g,
        LaplacianVariant::Compact,
        &Potential::delta_at_origin(&g, -2.0),
    )
    .unwrap();
    c.bench_function("lowest_eigenpair_n2001", |b| {
        b.iter(|| black_box(lowest_eigenpair(&ham, DEFAULT_SEED).unwrap()))
    });
}

fn bench_scalar_arithmetic(c: &mut Criterion) {
    let a = EuclideanScalar::from_real(2.0)
        + EuclideanScalar::term(0.5, 1)
        + EuclideanScalar::term(-1.25, 2);
    let b = EuclideanScalar::one() - EuclideanScalar::epsilon();
    c.bench_function("scalar_mul", |bch| {
        bch.iter(|| black_box(a.clone() * b.clone()))
    });
    c.bench_function("scalar_recip", |bch| {
        bch.iter(|| black_box(b.try_recip().unwrap()))
    });
}

criterion_group!(
    benches,
    bench_derivative_apply,
    bench_full_spectrum_bisection,
    bench_full_decomposition,
    bench_ground_state_fast_path,
    bench_scalar_arithmetic
);
criterion_main!(benches);
