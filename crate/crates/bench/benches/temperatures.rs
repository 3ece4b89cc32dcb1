use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qtemp_bench::{single, spin_bath};
use qtemp_core::models::{build_two_qubit_xy, TwoQubitXYParams};
use qtemp_core::{inverse_temperature, verify_universal_relation, Clip};
use std::hint::black_box;

fn inverse_temperature_by_dim(c: &mut Criterion) {
    let mut group = c.benchmark_group("inverse_temperature");
    for d in [2, 8, 32, 64] {
        let (rho, h) = single(d, 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, _| {
            b.iter(|| inverse_temperature(black_box(&rho), black_box(&h), Clip::default()).unwrap())
        });
    }
    group.finish();
}

fn relation_spin_bath(c: &mut Criterion) {
    let mut group = c.benchmark_group("universal_relation");
    group.sample_size(20);
    for n in [1, 3, 5] {
        let sys = spin_bath(n).unwrap();
        group.bench_with_input(BenchmarkId::new("spin_bath", n), &n, |b, _| {
            b.iter(|| verify_universal_relation(black_box(&sys), Clip::default()).unwrap())
        });
    }
    group.finish();
}

fn two_qubit_sweep(c: &mut Criterion) {
    let betas: Vec<f64> = (1..=50).map(|k| 0.1 * k as f64).collect();
    c.bench_function("two_qubit_sweep_50", |b| {
        b.iter(|| {
            for &beta in &betas {
                let p = TwoQubitXYParams::new(2.0, 1.0, 0.1, beta).unwrap();
                black_box(verify_universal_relation(&build_two_qubit_xy(&p).unwrap(), Clip::default()).unwrap());
            }
        })
    });
}

criterion_group!(benches, inverse_temperature_by_dim, relation_spin_bath, two_qubit_sweep);
criterion_main!(benches);
