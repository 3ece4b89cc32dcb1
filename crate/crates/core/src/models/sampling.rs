//! Random instances for property tests. Every generator takes the RNG
//! explicitly; a fixed seed gives bit-identical output.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::bipartite::BipartiteSystem;
use crate::error::Result;
use crate::hermitian::{CMatrix, CVector, DensityMatrix, HermitianOperator};
use num_complex::Complex64;

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(normal(rng), normal(rng)) * std::f64::consts::FRAC_1_SQRT_2
}

/// Gaussian unitary ensemble scaled so the spectrum stays O(1) in `d`.
pub fn sample_gue<R: Rng + ?Sized>(d: usize, rng: &mut R) -> HermitianOperator {
    let mut m = CMatrix::zeros(d, d);
    for i in 0..d {
        m[(i, i)] = Complex64::new(normal(rng), 0.0);
        for j in i + 1..d {
            let z = complex_normal(rng);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianOperator::from_hermitian_part(m.unscale((d as f64).sqrt()))
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
pub fn sample_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| complex_normal(rng));
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut u = q;
    for k in 0..d {
        let rkk = r[(k, k)];
        let phase = if rkk.norm() > 0.0 { rkk / rkk.norm() } else { Complex64::new(1.0, 0.0) };
        let col = u.column(k) * phase;
        u.set_column(k, &col);
    }
    u
}

/// Haar-random real orthogonal matrix.
pub fn sample_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| normal(rng));
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    let mut out = q;
    for k in 0..n {
        if r[(k, k)] < 0.0 {
            let col = -out.column(k);
            out.set_column(k, &col);
        }
    }
    out
}

fn conjugate(u: &CMatrix, diag: &[f64]) -> HermitianOperator {
    HermitianOperator::from_spectrum(diag, u)
}

/// Uniform point on the probability simplex, sorted as requested.
fn simplex<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<f64> {
    let w: Vec<f64> = (0..d).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

/// `(H, exp(-beta H)/Z)` with `H` from [`sample_gue`].
pub fn sample_gibbs<R: Rng + ?Sized>(d: usize, beta: f64, rng: &mut R) -> Result<(HermitianOperator, DensityMatrix)> {
    let h = sample_gue(d, rng);
    let rho = DensityMatrix::gibbs(&h, beta)?;
    Ok((h, rho))
}

fn ordered_pair<R: Rng + ?Sized>(d: usize, inverted: bool, rng: &mut R) -> Result<(HermitianOperator, DensityMatrix)> {
    let mut energies: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
    energies.sort_by(f64::total_cmp);
    let mut pops = simplex(d, rng);
    pops.sort_by(|a, b| if inverted { a.total_cmp(b) } else { b.total_cmp(a) });
    let u = sample_unitary(d, rng);
    let h = conjugate(&u, &energies);
    let rho = DensityMatrix::from_operator(&conjugate(&u, &pops))?;
    Ok((h, rho))
}

/// Commuting pair with populations non-increasing in energy.
pub fn sample_passive_pair<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<(HermitianOperator, DensityMatrix)> {
    ordered_pair(d, false, rng)
}

/// Commuting pair with populations non-decreasing in energy.
pub fn sample_inverted_pair<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<(HermitianOperator, DensityMatrix)> {
    ordered_pair(d, true, rng)
}

pub fn sample_pure<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DensityMatrix> {
    let psi = CVector::from_fn(d, |_, _| complex_normal(rng));
    DensityMatrix::pure(&psi)
}

/// `(1 - f) sum_k w_k |psi_k><psi_k| + f 1/d` with `f` in `[1e-3, 0.5]`, so
/// every eigenvalue is at least `1e-3/d`.
pub fn sample_full_rank<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DensityMatrix> {
    let floor = rng.random_range(1e-3..=0.5);
    let weights = simplex(d, rng);
    let mut m = CMatrix::identity(d, d).scale(floor / d as f64);
    for w in weights {
        let psi = CVector::from_fn(d, |_, _| complex_normal(rng));
        let psi = psi.unscale(psi.norm());
        m += (&psi * psi.adjoint()).scale((1.0 - floor) * w);
    }
    DensityMatrix::new(m)
}

/// Random local Hamiltonians, an interaction of size `coupling_scale`, and
/// a random full-rank joint state.
pub fn sample_bipartite<R: Rng + ?Sized>(
    d_s: usize,
    d_b: usize,
    coupling_scale: f64,
    rng: &mut R,
) -> Result<BipartiteSystem> {
    let h_s = sample_gue(d_s, rng);
    let h_b = sample_gue(d_b, rng);
    let h_i = sample_gue(d_s * d_b, rng).scale(coupling_scale);
    let rho = sample_full_rank(d_s * d_b, rng)?;
    BipartiteSystem::new(h_s, h_b, h_i, rho)
}
