//! A probe qubit weakly coupled to one site of a chain of bath qubits,
//! all in a global Gibbs state.
//!
//! `H_S = (omega_S/2) sigma_z`, `H_B = sum_k (eps_k/2) sigma_z^(k)` with
//! `eps_k = 0.8 + 0.3 k/N`, and
//! `H_I = g [sigma_x⊗x_1 + sigma_y⊗z_1 + 0.5 sigma_z⊗x_1 + 0.3 sigma_z⊗y_1]`
//! where `x_1, y_1, z_1` act on the first bath qubit. The bare coupling has
//! no component along `O_S⊗1` or `1⊗O_B`.

use crate::bipartite::BipartiteSystem;
use crate::error::{Error, Result};
use crate::hermitian::{pauli, CMatrix, HermitianOperator};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinBathParams {
    pub omega_s: f64,
    pub bath_qubits: usize,
    pub coupling: f64,
    pub beta: f64,
}

/// Splitting of bath qubit `k` out of `n`.
pub fn bath_splitting(k: usize, n: usize) -> f64 {
    0.8 + 0.3 * k as f64 / n as f64
}

fn on_site(op: &CMatrix, site: usize, n: usize) -> CMatrix {
    let id = CMatrix::identity(2, 2);
    let mut m = if site == 0 { op.clone() } else { id.clone() };
    for k in 1..n {
        m = m.kronecker(if k == site { op } else { &id });
    }
    m
}

pub fn spin_bath_hamiltonians(
    p: &SpinBathParams,
) -> Result<(HermitianOperator, HermitianOperator, HermitianOperator)> {
    let n = p.bath_qubits;
    if n == 0 || n > 10 {
        return Err(Error::Validation(format!("bath_qubits must be in 1..=10, got {n}")));
    }
    if ![p.omega_s, p.coupling, p.beta].iter().all(|x| x.is_finite()) {
        return Err(Error::Validation("model parameters must be finite".into()));
    }
    let d_b = 1usize << n;
    let mut hb = CMatrix::zeros(d_b, d_b);
    for k in 0..n {
        hb += on_site(&pauli::z(), k, n).scale(bath_splitting(k, n) / 2.0);
    }
    let (x1, y1, z1) = (on_site(&pauli::x(), 0, n), on_site(&pauli::y(), 0, n), on_site(&pauli::z(), 0, n));
    let hi = pauli::x().kronecker(&x1)
        + pauli::y().kronecker(&z1)
        + pauli::z().kronecker(&x1).scale(0.5)
        + pauli::z().kronecker(&y1).scale(0.3);
    Ok((
        HermitianOperator::new(pauli::z().scale(p.omega_s / 2.0))?,
        HermitianOperator::new(hb)?,
        HermitianOperator::new(hi.scale(p.coupling))?,
    ))
}

pub fn build_spin_bath(p: &SpinBathParams) -> Result<BipartiteSystem> {
    let (h_s, h_b, h_i) = spin_bath_hamiltonians(p)?;
    BipartiteSystem::thermal(h_s, h_b, h_i, p.beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::partial_trace;
    use crate::hermitian::{max_abs, Subsystem};

    #[test]
    fn coupling_has_no_local_part() {
        let p = SpinBathParams { omega_s: 1.0, bath_qubits: 3, coupling: 0.05, beta: 0.7 };
        let (_, _, h_i) = spin_bath_hamiltonians(&p).unwrap();
        let m = h_i.matrix();
        assert!(max_abs(&partial_trace(m, (2, 8), Subsystem::S).unwrap()) < 1e-15);
        assert!(max_abs(&partial_trace(m, (2, 8), Subsystem::B).unwrap()) < 1e-15);
    }

    #[test]
    fn rejects_oversized_bath() {
        let p = SpinBathParams { omega_s: 1.0, bath_qubits: 11, coupling: 0.05, beta: 0.7 };
        assert!(spin_bath_hamiltonians(&p).is_err());
    }
}
