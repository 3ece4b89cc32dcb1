mod common;

use common::{entropy_oracle, rng};
use num_complex::Complex64;
use qtemp_core::models::{build_two_qubit_xy, reference_grid, sample_bipartite, sample_full_rank, sample_gue};
use qtemp_core::*;

fn clip() -> Clip {
    Clip::default()
}

#[test]
fn correlations_have_no_local_part() {
    let mut r = rng(61);
    for k in 0..500 {
        let (ds, db) = (2 + k % 2, 2 + (k / 2) % 2);
        let sys = sample_bipartite(ds, db, 0.3, &mut r).unwrap();
        let chi = correlation_operator(&sys).unwrap();
        assert!(max_abs(&partial_trace(chi.matrix(), (ds, db), Subsystem::S).unwrap()) < 1e-14);
        assert!(max_abs(&partial_trace(chi.matrix(), (ds, db), Subsystem::B).unwrap()) < 1e-14);
    }
}

#[test]
fn binding_energy_three_ways() {
    let mut r = rng(62);
    for _ in 0..100 {
        let sys = sample_bipartite(2, 3, 0.5, &mut r).unwrap();
        let chi = correlation_operator(&sys).unwrap();
        let u = binding_energy(&sys).unwrap();
        let bare = hs_inner(&chi, sys.h_i()).unwrap();
        let total = hs_inner(&chi, &sys.h_sb().unwrap()).unwrap();
        assert!((u - bare).abs() < 1e-13);
        assert!((u - total).abs() < 1e-13);
    }
}

#[test]
fn effective_interaction_has_zero_partner_means() {
    let mut r = rng(63);
    for _ in 0..100 {
        let sys = sample_bipartite(3, 2, 0.7, &mut r).unwrap();
        let eff = effective_hamiltonians(&sys).unwrap();
        let prod = sys.product_of_marginals().unwrap();
        assert!(hs_inner(prod.operator(), &eff.h_i_eff).unwrap().abs() < 1e-13);
        let weight_b = tensor_product(&CMatrix::identity(3, 3), sys.rho_b().matrix()).unwrap();
        let weight_s = tensor_product(sys.rho_s().matrix(), &CMatrix::identity(2, 2)).unwrap();
        let on_s = partial_trace(&(weight_b * eff.h_i_eff.matrix()), (3, 2), Subsystem::S).unwrap();
        let on_b = partial_trace(&(weight_s * eff.h_i_eff.matrix()), (3, 2), Subsystem::B).unwrap();
        assert!(max_abs(&on_s) < 1e-13);
        assert!(max_abs(&on_b) < 1e-13);
        // total energy is untouched by the regrouping
        let regrouped = eff.h_s_eff.kron(&HermitianOperator::identity(2)).unwrap()
            .add(&HermitianOperator::identity(3).kron(&eff.h_b_eff).unwrap()).unwrap()
            .add(&eff.h_i_eff).unwrap();
        let mean = hs_inner(prod.operator(), sys.h_i()).unwrap();
        assert!(max_abs(&(regrouped.shift(-mean).into_matrix() - sys.h_sb().unwrap().matrix())) < 1e-13);
    }
}

#[test]
fn mutual_information_is_relative_entropy() {
    let mut r = rng(64);
    for _ in 0..100 {
        let sys = sample_bipartite(2, 2, 0.4, &mut r).unwrap();
        let oracle = entropy_oracle(sys.rho_s().matrix()) + entropy_oracle(sys.rho_b().matrix())
            - entropy_oracle(sys.rho_sb().matrix());
        let h_corr = correlation_log_hamiltonian(&sys, clip()).unwrap().op;
        let relative = -hs_inner(sys.rho_sb().operator(), &h_corr).unwrap();
        let s = mutual_information(&sys);
        assert!((s - oracle).abs() < 1e-11);
        assert!((s - relative).abs() < 1e-11);
        assert!(s >= 0.0);
    }
}

#[test]
fn correlation_temperature_on_the_gibbs_grid() {
    for p in reference_grid() {
        let sys = build_two_qubit_xy(&p).unwrap();
        let rep = correlation_inverse_temperature(&sys, clip()).unwrap();
        assert!((rep.beta_chi.to_f64() + p.beta).abs() <= 1e-9, "{p:?}: {}", rep.beta_chi);
        assert!((rep.h_i - std::f64::consts::SQRT_2 * p.lambda).abs() < 1e-13);
        assert!((rep.h_chi - 1.0).abs() < 1e-12);
    }
}

#[test]
fn product_states_have_zero_correlation_temperature() {
    let mut r = rng(65);
    for _ in 0..100 {
        let (h_s, h_b, h_i) = (sample_gue(2, &mut r), sample_gue(3, &mut r), sample_gue(6, &mut r).scale(0.3));
        let rho = sample_full_rank(2, &mut r).unwrap().kron(&sample_full_rank(3, &mut r).unwrap()).unwrap();
        let sys = BipartiteSystem::new(h_s, h_b, h_i, rho).unwrap();
        let rep = correlation_inverse_temperature(&sys, clip()).unwrap();
        assert!(rep.beta_chi.to_f64().abs() <= 1e-10);
        assert!(rep.s_chi.abs() <= 1e-12);
        assert!(rep.u_chi.abs() <= 1e-13);
    }
}

/// `beta_chi = -Tr[O_chi H_corr] / (h_I h_chi)` with `O_chi` from an explicit
/// Gram-Schmidt step against the normalized local directions.
fn beta_chi_oracle(sys: &BipartiteSystem) -> f64 {
    let eff = effective_hamiltonians(sys).unwrap();
    let (ds, db) = sys.dims();
    let unit = |a: &HermitianOperator| {
        let t = a.shift(-a.trace() / a.dim() as f64);
        let n = t.norm();
        t.scale(1.0 / n)
    };
    let h_i = eff.h_i_eff.shift(-eff.h_i_eff.trace() / (ds * db) as f64).norm();
    let o_i = unit(&eff.h_i_eff);
    let e_s = unit(&eff.h_s_eff).kron(&HermitianOperator::identity(db)).unwrap().scale(1.0 / (db as f64).sqrt());
    let e_b = HermitianOperator::identity(ds).kron(&unit(&eff.h_b_eff)).unwrap().scale(1.0 / (ds as f64).sqrt());
    let mut v = o_i.clone();
    for e in [&e_s, &e_b] {
        v = v.axpy(-v.inner(e).unwrap(), e).unwrap();
    }
    let h_chi = v.norm();
    let o_chi = v.scale(1.0 / h_chi);
    let h_corr = correlation_log_hamiltonian(sys, clip()).unwrap().op;
    -o_chi.inner(&h_corr).unwrap() / (h_i * h_chi)
}

#[test]
fn correlation_temperature_matches_gram_schmidt_oracle() {
    let mut r = rng(66);
    for k in 0..100 {
        let (ds, db) = (2 + k % 2, 2 + (k / 3) % 2);
        let sys = sample_bipartite(ds, db, 0.5, &mut r).unwrap();
        let got = correlation_inverse_temperature(&sys, clip()).unwrap().beta_chi.to_f64();
        let oracle = beta_chi_oracle(&sys);
        assert!((got - oracle).abs() <= 1e-10 * oracle.abs().max(1.0), "{got} vs {oracle}");
    }
}

#[test]
fn ising_bell_mixture_heats_up_monotonically() {
    let z = HermitianOperator::new(qtemp_core::pauli::z().scale(0.5)).unwrap();
    let h_i = HermitianOperator::new(tensor_product(&qtemp_core::pauli::x(), &qtemp_core::pauli::x()).unwrap()).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let zero = Complex64::new(0.0, 0.0);
    let phi = nalgebra::DVector::from_vec(vec![Complex64::new(s, 0.0), zero, zero, Complex64::new(s, 0.0)]);
    let bell = DensityMatrix::pure(&phi).unwrap();
    let mut previous = 0.0;
    for p in [1e-2, 1e-4, 1e-6] {
        let m = bell.matrix().scale(1.0 - p) + CMatrix::identity(4, 4).scale(p / 4.0);
        let sys = BipartiteSystem::new(z.clone(), z.clone(), h_i.clone(), DensityMatrix::new(m).unwrap()).unwrap();
        let b = correlation_inverse_temperature(&sys, clip()).unwrap().beta_chi.to_f64();
        assert!(b.is_finite());
        assert!(b.abs() > previous, "p = {p}: |beta_chi| = {}", b.abs());
        previous = b.abs();
    }
}

#[test]
fn correlation_log_hamiltonian_of_global_gibbs() {
    let mut r = rng(67);
    for _ in 0..20 {
        let (h_s, h_b, h_i) = (sample_gue(2, &mut r), sample_gue(3, &mut r), sample_gue(6, &mut r).scale(0.4));
        let sys = BipartiteSystem::thermal(h_s, h_b, h_i, 0.8).unwrap();
        let h_corr = correlation_log_hamiltonian(&sys, clip()).unwrap().op;
        let log_z = DensityMatrix::log_partition(&sys.h_sb().unwrap(), 0.8).unwrap();
        let expected = sys.h_sb().unwrap().scale(0.8).shift(log_z)
            .add(&sys.embed_s(&matrix_log(sys.rho_s(), clip()).op).unwrap()).unwrap()
            .add(&sys.embed_b(&matrix_log(sys.rho_b(), clip()).op).unwrap()).unwrap();
        assert!(max_abs(&(h_corr.into_matrix() - expected.matrix())) < 1e-11);
    }
}
