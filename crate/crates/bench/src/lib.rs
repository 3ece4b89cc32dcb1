//! Seeded fixtures shared by the benchmarks.

use qtemp_core::models::{build_spin_bath, sample_full_rank, sample_gue, SpinBathParams};
use qtemp_core::{BipartiteSystem, DensityMatrix, HermitianOperator, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A random Hamiltonian and full-rank state of dimension `d`.
pub fn single(d: usize, seed: u64) -> Result<(DensityMatrix, HermitianOperator)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = sample_gue(d, &mut rng);
    Ok((sample_full_rank(d, &mut rng)?, h))
}

/// Thermal spin-bath system with `n` bath qubits.
pub fn spin_bath(n: usize) -> Result<BipartiteSystem> {
    build_spin_bath(&SpinBathParams { omega_s: 1.0, bath_qubits: n, coupling: 0.05, beta: 0.7 })
}
