//! The relation between global, subsystem and correlation temperatures:
//!
//! `K_SB beta_SB = b_S beta~_S + b_B beta~_B - K_chi beta_chi`.
//!
//! The coefficients come from expanding the global Hamiltonian unit in the
//! frame `(O_S ⊗ 1, 1 ⊗ O_B, O_chi)`.

use serde::Serialize;

use crate::basis::{hamiltonian_unit, TracelessUnit};
use crate::bipartite::{
    chi_unit_from, correlation_log_hamiltonian, effective_hamiltonians, BipartiteSystem, ChiUnit,
    CorrelationProjections,
};
use crate::error::{Error, Result};
use crate::extended::ExtendedReal;
use crate::hermitian::{hs_inner, Clip, HermitianOperator};
use crate::thermometry::inverse_temperature;

/// Guard on `C_S^2 d_B + C_B^2 d_S`.
pub const DENOMINATOR_FLOOR: f64 = 1e-14;

struct Frame {
    global: TracelessUnit,
    chi: Option<ChiUnit>,
    o_s: Option<TracelessUnit>,
    o_b: Option<TracelessUnit>,
    h_s_eff: HermitianOperator,
    h_b_eff: HermitianOperator,
}

fn optional_unit(a: &HermitianOperator) -> Result<Option<TracelessUnit>> {
    match hamiltonian_unit(a) {
        Ok(u) => Ok(Some(u)),
        Err(Error::DegenerateDirection(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

impl Frame {
    fn new(sys: &BipartiteSystem) -> Result<Self> {
        let eff = effective_hamiltonians(sys)?;
        let global = hamiltonian_unit(&sys.h_sb()?)?;
        let chi = match chi_unit_from(&eff, sys) {
            Ok(u) => Some(u),
            Err(Error::DegenerateDirection(_)) => None,
            Err(e) => return Err(e),
        };
        let (o_s, o_b) = match &chi {
            Some(u) => (u.o_s.clone(), u.o_b.clone()),
            None => (optional_unit(&eff.h_s_eff)?, optional_unit(&eff.h_b_eff)?),
        };
        Ok(Frame { global, chi, o_s, o_b, h_s_eff: eff.h_s_eff, h_b_eff: eff.h_b_eff })
    }

    fn h_s(&self) -> f64 {
        self.o_s.as_ref().map_or(0.0, |u| u.h)
    }

    fn h_b(&self) -> f64 {
        self.o_b.as_ref().map_or(0.0, |u| u.h)
    }

    fn local_s(&self, sys: &BipartiteSystem) -> Result<Option<HermitianOperator>> {
        self.o_s.as_ref().map(|u| sys.embed_s(&u.op)).transpose()
    }

    fn local_b(&self, sys: &BipartiteSystem) -> Result<Option<HermitianOperator>> {
        self.o_b.as_ref().map(|u| sys.embed_b(&u.op)).transpose()
    }

    fn expansion(&self, sys: &BipartiteSystem) -> Result<Expansion> {
        let o1 = &self.global.op;
        let c_s = match self.local_s(sys)? {
            Some(e) => hs_inner(o1, &e)? / sys.d_b() as f64,
            None => 0.0,
        };
        let c_b = match self.local_b(sys)? {
            Some(e) => hs_inner(o1, &e)? / sys.d_s() as f64,
            None => 0.0,
        };
        let c_chi = match &self.chi {
            Some(u) => hs_inner(o1, &u.op)?,
            None => 0.0,
        };
        Ok(Expansion { c_s, c_b, c_chi })
    }
}

/// `(O1_SB, h_SB)` for `H_SB = H_S ⊗ 1 + 1 ⊗ H_B + H_I`.
pub fn global_hamiltonian_unit(sys: &BipartiteSystem) -> Result<TracelessUnit> {
    hamiltonian_unit(&sys.h_sb()?)
}

/// `O1_SB = C_S O_S ⊗ 1 + C_B 1 ⊗ O_B + C_chi O_chi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Expansion {
    pub c_s: f64,
    pub c_b: f64,
    pub c_chi: f64,
}

pub fn expansion_coefficients(sys: &BipartiteSystem) -> Result<Expansion> {
    Frame::new(sys)?.expansion(sys)
}

/// Operators completing `O1_SB` to a frame of the same three-dimensional span.
/// `o3` is `None` (and `degenerate` set) when `C_chi = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct AuxiliaryBasis {
    pub o2: HermitianOperator,
    pub o3: Option<HermitianOperator>,
    pub degenerate: bool,
}

pub fn auxiliary_basis(sys: &BipartiteSystem) -> Result<AuxiliaryBasis> {
    let frame = Frame::new(sys)?;
    let Expansion { c_s, c_b, c_chi } = frame.expansion(sys)?;
    let (d_s, d_b) = (sys.d_s() as f64, sys.d_b() as f64);
    let d = sys.d_s() * sys.d_b();
    let os = frame.local_s(sys)?.unwrap_or_else(|| HermitianOperator::zeros(d));
    let ob = frame.local_b(sys)?.unwrap_or_else(|| HermitianOperator::zeros(d));
    let o2 = os.scale(c_b / d_b).axpy(-c_s / d_s, &ob)?;
    let o3 = match &frame.chi {
        Some(u) if c_chi != 0.0 => {
            let w = (c_s * c_s * d_b + c_b * c_b * d_s) / c_chi;
            Some(os.scale(c_s).axpy(c_b, &ob)?.axpy(-w, &u.op)?)
        }
        _ => None,
    };
    let degenerate = o3.is_none();
    Ok(AuxiliaryBasis { o2, o3, degenerate })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelationCoefficients {
    pub c_s: f64,
    pub c_b: f64,
    pub c_chi: f64,
    pub k_sb: f64,
    pub b_s: f64,
    pub b_b: f64,
    pub k_chi: f64,
    pub h_sb: f64,
    pub h_s: f64,
    pub h_b: f64,
    pub h_i: f64,
    pub h_chi: f64,
    /// `false` on the no-interaction path (`C_chi = 0`).
    pub interacting: bool,
}

fn coefficients(frame: &Frame, sys: &BipartiteSystem) -> Result<RelationCoefficients> {
    let Expansion { c_s, c_b, c_chi } = frame.expansion(sys)?;
    let (d_s, d_b) = (sys.d_s() as f64, sys.d_b() as f64);
    let h_sb = frame.global.h;
    let (h_s, h_b) = (frame.h_s(), frame.h_b());
    let base = RelationCoefficients {
        c_s,
        c_b,
        c_chi,
        k_sb: 0.0,
        b_s: 0.0,
        b_b: 0.0,
        k_chi: 0.0,
        h_sb,
        h_s,
        h_b,
        h_i: 0.0,
        h_chi: 0.0,
        interacting: false,
    };
    match &frame.chi {
        None => Ok(RelationCoefficients {
            k_sb: (h_s * h_s + h_b * h_b) / h_sb,
            b_s: h_s * h_s / h_sb,
            b_b: h_b * h_b / h_sb,
            ..base
        }),
        Some(u) => {
            let denom = c_s * c_s * d_b + c_b * c_b * d_s;
            if denom < DENOMINATOR_FLOOR {
                return Err(Error::Numerical(
                    "global Hamiltonian unit has no local component (C_S^2 d_B + C_B^2 d_S vanishes)".into(),
                ));
            }
            let local = c_s * c_s + c_b * c_b;
            let h_i = u.o_i.h;
            Ok(RelationCoefficients {
                k_sb: h_sb * (local + c_chi * c_chi * local / denom),
                b_s: c_s * h_s,
                b_b: c_b * h_b,
                k_chi: h_i * (c_chi * u.h_chi * local / denom + c_s * u.overlap_s / d_b + c_b * u.overlap_b / d_s),
                h_i,
                h_chi: u.h_chi,
                interacting: true,
                ..base
            })
        }
    }
}

pub fn relation_coefficients(sys: &BipartiteSystem) -> Result<RelationCoefficients> {
    coefficients(&Frame::new(sys)?, sys)
}

/// Leading-order coefficients for a bath much larger than the system
/// (`C_S -> 0`). Requires `d_B >= 4 d_S`.
pub fn large_bath_coefficients(sys: &BipartiteSystem) -> Result<RelationCoefficients> {
    if sys.d_b() < 4 * sys.d_s() {
        return Err(Error::Validation(format!(
            "large-bath forms need d_B >= 4 d_S, got d_S = {}, d_B = {}",
            sys.d_s(),
            sys.d_b()
        )));
    }
    let frame = Frame::new(sys)?;
    let Expansion { c_s, c_b, c_chi } = frame.expansion(sys)?;
    let d_s = sys.d_s() as f64;
    let h_sb = frame.global.h;
    let (h_s, h_b) = (frame.h_s(), frame.h_b());
    let (h_i, h_chi, overlap_b) = frame
        .chi
        .as_ref()
        .map_or((0.0, 0.0, 0.0), |u| (u.o_i.h, u.h_chi, u.overlap_b));
    Ok(RelationCoefficients {
        c_s,
        c_b,
        c_chi,
        k_sb: h_sb * (c_b * c_b + c_chi * c_chi / d_s),
        b_s: 0.0,
        b_b: h_b * c_b,
        k_chi: h_i * (c_chi * h_chi / d_s + c_b * overlap_b / d_s),
        h_sb,
        h_s,
        h_b,
        h_i,
        h_chi,
        interacting: frame.chi.is_some(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TildeTemperatures {
    /// Local inverse temperature of `(rho_S, H_S_eff)`.
    pub beta_s: ExtendedReal,
    pub beta_b: ExtendedReal,
    pub beta_tilde_s: ExtendedReal,
    pub beta_tilde_b: ExtendedReal,
    pub clipped: bool,
}

fn local_beta(
    rho: &crate::hermitian::DensityMatrix,
    h: &HermitianOperator,
    unit: &Option<TracelessUnit>,
    clip: Clip,
) -> Result<(ExtendedReal, bool)> {
    if unit.is_none() {
        return Ok((ExtendedReal::undefined("local effective Hamiltonian is proportional to the identity"), false));
    }
    let r = inverse_temperature(rho, h, clip)?;
    Ok((r.beta, r.clipped))
}

fn shift(beta: &ExtendedReal, correction: f64) -> ExtendedReal {
    match beta {
        ExtendedReal::Finite(b) => ExtendedReal::from_f64(b + correction),
        other => other.clone(),
    }
}

struct Temperatures {
    tilde: TildeTemperatures,
    beta_chi: ExtendedReal,
}

fn temperatures(frame: &Frame, sys: &BipartiteSystem, clip: Clip) -> Result<Temperatures> {
    let (beta_s, clip_s) = local_beta(sys.rho_s(), &frame.h_s_eff, &frame.o_s, clip)?;
    let (beta_b, clip_b) = local_beta(sys.rho_b(), &frame.h_b_eff, &frame.o_b, clip)?;
    let h_corr = correlation_log_hamiltonian(sys, clip)?;
    let (d_s, d_b) = (sys.d_s() as f64, sys.d_b() as f64);

    let on_s = match frame.local_s(sys)? {
        Some(e) => hs_inner(&e, &h_corr.op)?,
        None => 0.0,
    };
    let on_b = match frame.local_b(sys)? {
        Some(e) => hs_inner(&e, &h_corr.op)?,
        None => 0.0,
    };
    let (mut corr_s, mut corr_b) = (on_s, on_b);
    let beta_chi = match &frame.chi {
        Some(u) => {
            let proj = CorrelationProjections::new(sys, u, &h_corr.op)?;
            let q = proj.reduced(sys, u);
            let w = q / (u.h_chi * u.h_chi);
            corr_s -= u.overlap_s * w;
            corr_b -= u.overlap_b * w;
            ExtendedReal::from_f64(-q / (u.o_i.h * u.h_chi * u.h_chi))
        }
        None => ExtendedReal::undefined("no interaction direction"),
    };
    let beta_tilde_s = match &frame.o_s {
        Some(u) => shift(&beta_s, corr_s / (d_b * u.h)),
        None => beta_s.clone(),
    };
    let beta_tilde_b = match &frame.o_b {
        Some(u) => shift(&beta_b, corr_b / (d_s * u.h)),
        None => beta_b.clone(),
    };
    Ok(Temperatures {
        tilde: TildeTemperatures {
            beta_s,
            beta_b,
            beta_tilde_s,
            beta_tilde_b,
            clipped: h_corr.clipped || clip_s || clip_b,
        },
        beta_chi,
    })
}

/// Subsystem inverse temperatures seen with access to the total entropy:
///
/// `beta~_S = beta_S + Tr[(O_S⊗1) H_corr]/(d_B h_S) - a_S Q / (d_B h_S h_chi^2)`
///
/// with `Q = Tr[O_I H_corr] - (a_S/d_B) Tr[(O_S⊗1) H_corr] - (a_B/d_S) Tr[(1⊗O_B) H_corr]`,
/// and the mirror image for B.
pub fn tilde_inverse_temperatures(sys: &BipartiteSystem, clip: Clip) -> Result<TildeTemperatures> {
    Ok(temperatures(&Frame::new(sys)?, sys, clip)?.tilde)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniversalRelation {
    pub coefficients: RelationCoefficients,
    pub beta_sb: ExtendedReal,
    pub beta_s: ExtendedReal,
    pub beta_b: ExtendedReal,
    pub beta_tilde_s: ExtendedReal,
    pub beta_tilde_b: ExtendedReal,
    pub beta_chi: ExtendedReal,
    /// `K_SB beta_SB - b_S beta~_S - b_B beta~_B + K_chi beta_chi`.
    pub residual: ExtendedReal,
    pub clipped: bool,
}

/// `k * beta`, with terms whose coefficient is exactly zero dropped.
fn term(k: f64, beta: &ExtendedReal) -> Option<f64> {
    if k == 0.0 {
        return Some(0.0);
    }
    beta.finite().map(|b| k * b)
}

pub fn verify_universal_relation(sys: &BipartiteSystem, clip: Clip) -> Result<UniversalRelation> {
    let frame = Frame::new(sys)?;
    let coefficients = coefficients(&frame, sys)?;
    let Temperatures { tilde, beta_chi } = temperatures(&frame, sys, clip)?;
    let global = inverse_temperature(sys.rho_sb(), &sys.h_sb()?, clip)?;
    let terms = [
        term(coefficients.k_sb, &global.beta),
        term(-coefficients.b_s, &tilde.beta_tilde_s),
        term(-coefficients.b_b, &tilde.beta_tilde_b),
        term(coefficients.k_chi, &beta_chi),
    ];
    let residual = if terms.iter().all(Option::is_some) {
        ExtendedReal::from_f64(terms.iter().flatten().sum())
    } else {
        ExtendedReal::undefined("a temperature with a nonzero coefficient is not finite")
    };
    Ok(UniversalRelation {
        coefficients,
        beta_sb: global.beta,
        beta_s: tilde.beta_s,
        beta_b: tilde.beta_b,
        beta_tilde_s: tilde.beta_tilde_s,
        beta_tilde_b: tilde.beta_tilde_b,
        beta_chi,
        residual,
        clipped: tilde.clipped || global.clipped,
    })
}
