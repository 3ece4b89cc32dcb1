#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use qtemp_core::{CMatrix, HermitianOperator};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Scaling-and-squaring Taylor series; shares nothing with the eigensolver.
pub fn taylor_exp(a: &CMatrix) -> CMatrix {
    let d = a.nrows();
    let norm: f64 = a.iter().map(|z| z.norm()).sum::<f64>().max(1e-300);
    let squarings = (norm.log2().ceil().max(0.0) as i32) + 2;
    let x = a.unscale(2f64.powi(squarings));
    let mut term = CMatrix::identity(d, d);
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &x / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Eigenvalues from a cyclic Jacobi sweep on the
/// real 2d x 2d embedding `[[Re, -Im], [Im, Re]]` (each root twice).
pub fn jacobi_eigenvalues(a: &CMatrix) -> Vec<f64> {
    let d = a.nrows();
    let mut m = DMatrix::<f64>::zeros(2 * d, 2 * d);
    for i in 0..d {
        for j in 0..d {
            let z = a[(i, j)];
            m[(i, j)] = z.re;
            m[(i + d, j + d)] = z.re;
            m[(i, j + d)] = -z.im;
            m[(i + d, j)] = z.im;
        }
    }
    let n = 2 * d;
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += m[(p, q)] * m[(p, q)];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if m[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * m[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    ev.sort_by(f64::total_cmp);
    ev.chunks(2).map(|c| 0.5 * (c[0] + c[1])).collect()
}

pub fn entropy_oracle(rho: &CMatrix) -> f64 {
    jacobi_eigenvalues(rho)
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.ln())
        .sum()
}

pub fn energy_oracle(rho: &CMatrix, h: &HermitianOperator) -> f64 {
    (rho * h.matrix()).trace().re
}

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Orthogonal matrix from the QR factor of a Gaussian matrix.
pub fn random_orthogonal<R: rand::Rng>(n: usize, r: &mut R) -> DMatrix<f64> {
    use rand_distr::{Distribution, StandardNormal};
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| StandardNormal.sample(r));
    g.qr().q()
}
