//! Single-system temperature: entropy, energy, the covariance form of the
//! inverse temperature, generalized-Gibbs coordinates, free energy,
//! passivity and the eigenvalue/eigenprojector split of a variation.

use serde::Serialize;

use crate::basis::{expand_state, hamiltonian_unit, OperatorBasis};
use crate::error::{Error, Result};
use crate::extended::ExtendedReal;
use crate::hermitian::{
    eig_hermitian, hs_inner, matrix_exp, matrix_log, max_abs, trace_re, CMatrix, Clip, DensityMatrix,
    HermitianOperator,
};

fn check_dims(rho: &DensityMatrix, h: &HermitianOperator) -> Result<()> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!("state dim {} vs Hamiltonian dim {}", rho.dim(), h.dim())));
    }
    Ok(())
}

/// `-sum lambda ln lambda`, with `0 ln 0 = 0`, clamped to `[0, ln d]`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s: f64 = rho
        .eigenvalues()
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum();
    s.clamp(0.0, (rho.dim() as f64).ln())
}

pub fn internal_energy(rho: &DensityMatrix, h: &HermitianOperator) -> Result<f64> {
    check_dims(rho, h)?;
    hs_inner(rho.operator(), h)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TemperatureReport {
    pub beta: ExtendedReal,
    pub temperature: ExtendedReal,
    pub h: f64,
    /// `Cov(H, -log rho)` with respect to `1/d`.
    pub covariance: f64,
    /// `Var(H)` with respect to `1/d`.
    pub variance: f64,
    pub entropy: f64,
    pub internal_energy: f64,
    pub free_energy: ExtendedReal,
    pub rank: usize,
    pub rank_deficient: bool,
    pub clipped: bool,
}

/// `-(1/h) Tr[O1 log rho]`, the coordinate form of the inverse temperature.
pub fn beta_from_unit(rho: &DensityMatrix, h: &HermitianOperator, clip: Clip) -> Result<f64> {
    check_dims(rho, h)?;
    let unit = hamiltonian_unit(h)?;
    let log = matrix_log(rho, clip).op;
    Ok(-hs_inner(&unit.op, &log)? / unit.h)
}

/// Inverse temperature `Cov(H, -log rho) / Var(H)`, moments taken against `1/d`.
///
/// The maximally mixed state gives `beta = 0` exactly. Rank-1 states give
/// `T = 0` exactly with `beta = +-inf` by the sign of the regularized
/// covariance.
pub fn inverse_temperature(rho: &DensityMatrix, h: &HermitianOperator, clip: Clip) -> Result<TemperatureReport> {
    check_dims(rho, h)?;
    let d = h.dim() as f64;
    let unit = hamiltonian_unit(h)?;
    let log = matrix_log(rho, clip);
    let neg_log = log.op.scale(-1.0);

    let h_centered = h.shift(-h.trace() / d);
    let l_centered = neg_log.shift(-neg_log.trace() / d);
    let covariance = hs_inner(&h_centered, &l_centered)? / d;
    let variance = unit.h * unit.h / d;
    let beta_cov = covariance / variance;

    let beta_coord = -hs_inner(&unit.op, &log.op)? / unit.h;
    let scale = 1.0 + beta_cov.abs().max(l_centered.norm() / unit.h);
    if (beta_cov - beta_coord).abs() > 1e-10 * scale {
        return Err(Error::Numerical(format!(
            "covariance and coordinate forms disagree ({beta_cov} vs {beta_coord})"
        )));
    }

    let eig = rho.eigenvalues();
    let spread = eig[eig.len() - 1] - eig[0];
    let rank = rho.rank();
    let entropy = von_neumann_entropy(rho);
    let internal_energy = internal_energy(rho, h)?;

    let (beta, temperature) = if spread <= crate::hermitian::Tolerances::default().rank {
        (ExtendedReal::Finite(0.0), ExtendedReal::PosInfinity)
    } else if rank == 1 {
        let sd_log = (l_centered.norm() / d.sqrt()).max(f64::MIN_POSITIVE);
        let sd_h = (variance).sqrt();
        let beta = if covariance.abs() <= 1e-12 * sd_log * sd_h {
            ExtendedReal::undefined("pure state with no energy contrast in its support")
        } else if covariance > 0.0 {
            ExtendedReal::PosInfinity
        } else {
            ExtendedReal::NegInfinity
        };
        (beta, ExtendedReal::Finite(0.0))
    } else {
        let b = ExtendedReal::Finite(beta_cov);
        let t = b.recip();
        (b, t)
    };

    let free_energy = match (&beta, rank) {
        (_, 1) => ExtendedReal::undefined("zero temperature: F is the limit U"),
        (ExtendedReal::Finite(b), _) if *b == 0.0 => ExtendedReal::undefined("infinite temperature"),
        (ExtendedReal::Finite(b), _) => ExtendedReal::Finite(internal_energy - entropy / b),
        _ => ExtendedReal::undefined("temperature not finite"),
    };

    Ok(TemperatureReport {
        beta,
        temperature,
        h: unit.h,
        covariance,
        variance,
        entropy,
        internal_energy,
        free_energy,
        rank,
        rank_deficient: rank < rho.dim(),
        clipped: log.clipped,
    })
}

fn check_basis(basis: &OperatorBasis, h: &HermitianOperator) -> Result<()> {
    if basis.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!("basis dim {} vs Hamiltonian dim {}", basis.dim(), h.dim())));
    }
    let unit = hamiltonian_unit(h)?;
    if max_abs(&(basis.op(1).matrix() - unit.op.matrix())) > 1e-10 {
        return Err(Error::Validation("basis operator 1 is not the Hamiltonian unit".into()));
    }
    Ok(())
}

fn require_full_rank(rho: &DensityMatrix) -> Result<()> {
    if !rho.is_full_rank() {
        return Err(Error::RankDeficient { rank: rho.rank(), dim: rho.dim() });
    }
    Ok(())
}

/// `rho = exp(-log_norm - beta H + sum_{i>=2} c_i O_i)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralizedGibbsForm {
    pub beta: f64,
    pub c: Vec<f64>,
    pub log_norm: f64,
}

impl GeneralizedGibbsForm {
    fn exponent_without_norm(&self, h: &HermitianOperator, basis: &OperatorBasis) -> Result<HermitianOperator> {
        let mut m = h.scale(-self.beta);
        for (ci, o) in self.c.iter().zip(&basis.ops()[2..]) {
            m = m.axpy(*ci, o)?;
        }
        Ok(m)
    }

    pub fn reconstruct(&self, h: &HermitianOperator, basis: &OperatorBasis) -> Result<HermitianOperator> {
        matrix_exp(&self.exponent_without_norm(h, basis)?.shift(-self.log_norm))
    }
}

pub fn generalized_gibbs_decomposition(
    rho: &DensityMatrix,
    h: &HermitianOperator,
    basis: &OperatorBasis,
) -> Result<GeneralizedGibbsForm> {
    check_dims(rho, h)?;
    check_basis(basis, h)?;
    require_full_rank(rho)?;
    let report = inverse_temperature(rho, h, Clip::default())?;
    let beta = report
        .beta
        .finite()
        .ok_or_else(|| Error::Numerical("inverse temperature is not finite".into()))?;
    let log = matrix_log(rho, Clip::default()).op;
    let c = basis.ops()[2..]
        .iter()
        .map(|o| hs_inner(o, &log))
        .collect::<Result<Vec<f64>>>()?;
    let mut form = GeneralizedGibbsForm { beta, c, log_norm: 0.0 };
    let exponent = form.exponent_without_norm(h, basis)?;
    let spec = eig_hermitian(&exponent)?;
    let top = spec.eigenvalues[spec.dim() - 1];
    form.log_norm = top + spec.eigenvalues.iter().map(|&x| (x - top).exp()).sum::<f64>().ln();
    Ok(form)
}

/// `sum_{i>=2} Tr[O_i log rho] x_i`.
pub fn helmholtz_sum(rho: &DensityMatrix, basis: &OperatorBasis) -> Result<f64> {
    if basis.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!("basis dim {} vs state dim {}", basis.dim(), rho.dim())));
    }
    require_full_rank(rho)?;
    let log = matrix_log(rho, Clip::default()).op;
    let x = expand_state(rho, basis)?.x;
    let mut acc = 0.0;
    for (xi, o) in x.iter().zip(basis.ops()).skip(2) {
        acc += hs_inner(o, &log)? * xi;
    }
    Ok(acc)
}

/// `F = U - T S`, cross-checked against `T (sum_{i>=2} c_i x_i + Tr[log rho]/d) + Tr H/d`.
pub fn helmholtz_free_energy(rho: &DensityMatrix, h: &HermitianOperator, basis: &OperatorBasis) -> Result<f64> {
    check_dims(rho, h)?;
    check_basis(basis, h)?;
    require_full_rank(rho)?;
    let report = inverse_temperature(rho, h, Clip::default())?;
    let beta = match report.beta {
        ExtendedReal::Finite(b) if b != 0.0 => b,
        _ => return Err(Error::FreeEnergyUndefined("inverse temperature is zero")),
    };
    let t = 1.0 / beta;
    let f = report.internal_energy - t * report.entropy;
    let d = rho.dim() as f64;
    let log_trace = trace_re(matrix_log(rho, Clip::default()).op.matrix());
    let f_coord = t * (helmholtz_sum(rho, basis)? + log_trace / d) + h.trace() / d;
    let scale = 1.0 + f.abs().max(t.abs() * (1.0 + log_trace.abs()));
    if (f - f_coord).abs() > 1e-9 * scale {
        return Err(Error::Numerical(format!("free energy forms disagree ({f} vs {f_coord})")));
    }
    Ok(f)
}

fn commutator_norm(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a * b - b * a))
}

/// Passive: `[rho, H] = 0` and populations non-increasing in energy, with
/// any ordering allowed inside a degenerate energy level.
pub fn is_passive(rho: &DensityMatrix, h: &HermitianOperator) -> Result<bool> {
    check_dims(rho, h)?;
    let scale = h.max_abs().max(1.0);
    if commutator_norm(rho.matrix(), h.matrix()) > 1e-10 * scale {
        return Ok(false);
    }
    let spec = eig_hermitian(h)?;
    let clusters = spec.clusters(1e-9 * scale);
    let mut previous_min = f64::INFINITY;
    for range in clusters {
        let v = spec.eigenvectors.columns(range.start, range.len()).into_owned();
        let block = HermitianOperator::new(v.adjoint() * rho.matrix() * &v)?;
        let pops = eig_hermitian(&block)?.eigenvalues;
        let (lo, hi) = (pops[0], pops[pops.len() - 1]);
        if hi > previous_min + 1e-12 {
            return Ok(false);
        }
        previous_min = lo;
    }
    Ok(true)
}

/// `d_ev`: the part of a variation that changes eigenvalues only;
/// `d_ep`: the remainder, which rotates eigenprojectors.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationSplit {
    pub d_ev: HermitianOperator,
    pub d_ep: HermitianOperator,
}

pub fn variation_split(rho: &DensityMatrix, drho: &HermitianOperator) -> Result<VariationSplit> {
    if drho.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!("variation dim {} vs state dim {}", drho.dim(), rho.dim())));
    }
    if drho.trace().abs() > 1e-8 {
        return Err(Error::Validation(format!("variation must be traceless, trace is {}", drho.trace())));
    }
    let spec = rho.spectrum();
    let norm = spec.eigenvalues[spec.dim() - 1].abs().max(spec.eigenvalues[0].abs());
    let mut d_ev = CMatrix::zeros(rho.dim(), rho.dim());
    for range in spec.clusters(1e-9 * norm) {
        let p = spec.projector(range);
        d_ev += &p * drho.matrix() * &p;
    }
    let d_ev = HermitianOperator::from_hermitian_part(d_ev);
    let d_ep = drho.sub(&d_ev)?;
    Ok(VariationSplit { d_ev, d_ep })
}

/// Conventional (`dq`, `dw`) and entropic (`dq_entropic`, `dw_entropic`)
/// heat and work for a variation `(drho, dH)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeatWork {
    pub dq: f64,
    pub dw: f64,
    pub dq_entropic: f64,
    pub dw_entropic: f64,
}

pub fn heat_and_work(
    rho: &DensityMatrix,
    drho: &HermitianOperator,
    h: &HermitianOperator,
    dh: &HermitianOperator,
) -> Result<HeatWork> {
    check_dims(rho, h)?;
    check_dims(rho, dh)?;
    let split = variation_split(rho, drho)?;
    let dq = hs_inner(drho, h)?;
    let dw = hs_inner(rho.operator(), dh)?;
    let dq_entropic = hs_inner(&split.d_ev, h)?;
    let dw_entropic = hs_inner(&split.d_ep, h)? + dw;
    Ok(HeatWork { dq, dw, dq_entropic, dw_entropic })
}

/// Central difference `dS/dU` along `O_1` of `basis`, holding the other
/// coordinates fixed.
pub fn finite_difference_beta(
    rho: &DensityMatrix,
    h: &HermitianOperator,
    basis: &OperatorBasis,
    step: f64,
) -> Result<f64> {
    check_dims(rho, h)?;
    check_basis(basis, h)?;
    require_full_rank(rho)?;
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::Validation(format!("step must be positive, got {step}")));
    }
    let o1 = basis.op(1);
    let shifted = |s: f64| -> Result<DensityMatrix> {
        let m = rho.operator().axpy(s, o1)?;
        match DensityMatrix::from_operator(&m) {
            Ok(r) if r.is_full_rank() && r.min_eigenvalue() > 0.0 => Ok(r),
            Ok(_) | Err(Error::NotPositive { .. }) => Err(Error::StepTooLarge),
            Err(e) => Err(e),
        }
    };
    let plus = shifted(step)?;
    let minus = shifted(-step)?;
    let ds = von_neumann_entropy(&plus) - von_neumann_entropy(&minus);
    let du = internal_energy(&plus, h)? - internal_energy(&minus, h)?;
    Ok(ds / du)
}
