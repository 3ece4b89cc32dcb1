mod common;

use common::{random_orthogonal, rng};
use qtemp_core::models::{sample_full_rank, sample_gue};
use qtemp_core::*;

#[test]
fn completed_bases_are_orthonormal_and_anchored() {
    let mut r = rng(31);
    for k in 0..100 {
        let d = 2 + k % 5;
        let h = sample_gue(d, &mut r);
        let basis = OperatorBasis::for_hamiltonian(&h).unwrap();
        assert_eq!(basis.len(), d * d);
        assert!(basis.orthonormality_error() < 1e-12);
        let id = HermitianOperator::identity(d).scale(1.0 / (d as f64).sqrt());
        assert!(max_abs(&(basis.op(0).matrix() - id.matrix())) < 1e-14);
        let unit = hamiltonian_unit(&h).unwrap();
        assert!(max_abs(&(basis.op(1).matrix() - unit.op.matrix())) < 1e-14);
        for o in &basis.ops()[1..] {
            assert!(o.trace().abs() < 1e-12);
        }
    }
}

#[test]
fn expansion_round_trip_and_parseval() {
    let mut r = rng(32);
    for d in 2..=6 {
        let h = sample_gue(d, &mut r);
        let basis = OperatorBasis::for_hamiltonian(&h).unwrap();
        let rho = sample_full_rank(d, &mut r).unwrap();
        let x = expand_state(&rho, &basis).unwrap();
        assert!((x.x[0] - 1.0 / (d as f64).sqrt()).abs() < 1e-14);
        assert!(max_abs(&(x.reconstruct(&basis).unwrap().into_matrix() - rho.matrix())) < 1e-13);
        let sum_sq: f64 = x.x.iter().map(|v| v * v).sum();
        assert!((sum_sq - rho.purity()).abs() < 1e-13);
    }
}

#[test]
fn energy_lives_on_the_first_two_coordinates() {
    let mut r = rng(33);
    for d in 2..=5 {
        let h = sample_gue(d, &mut r);
        let basis = OperatorBasis::for_hamiltonian(&h).unwrap();
        let rho = sample_full_rank(d, &mut r).unwrap();
        let x = expand_state(&rho, &basis).unwrap();
        let unit = hamiltonian_unit(&h).unwrap();
        let u = internal_energy(&rho, &h).unwrap();
        assert!((u - (unit.h * x.x[1] + h.trace() / d as f64)).abs() < 1e-13);
    }
}

#[test]
fn tail_rotations_leave_temperature_and_helmholtz_sum_fixed() {
    let mut r = rng(34);
    for k in 0..100 {
        let d = 2 + k % 4;
        let h = sample_gue(d, &mut r);
        let basis = OperatorBasis::for_hamiltonian(&h).unwrap();
        let rho = sample_full_rank(d, &mut r).unwrap();
        let rot = random_orthogonal(d * d - 2, &mut r);
        let rotated = rotate_tail(&basis, &rot).unwrap();
        assert!(rotated.orthonormality_error() < 1e-12);
        let b0 = generalized_gibbs_decomposition(&rho, &h, &basis).unwrap().beta;
        let b1 = generalized_gibbs_decomposition(&rho, &h, &rotated).unwrap().beta;
        assert!((b0 - b1).abs() <= 1e-10);
        let s0 = helmholtz_sum(&rho, &basis).unwrap();
        let s1 = helmholtz_sum(&rho, &rotated).unwrap();
        assert!((s0 - s1).abs() <= 1e-10, "{s0} vs {s1}");
    }
}

#[test]
fn non_orthogonal_rotation_is_rejected() {
    let h = HermitianOperator::diagonal(&[0.0, 1.0]).unwrap();
    let basis = OperatorBasis::for_hamiltonian(&h).unwrap();
    let mut m = nalgebra::DMatrix::<f64>::identity(2, 2);
    m[(0, 1)] = 0.5;
    assert!(rotate_tail(&basis, &m).is_err());
}
