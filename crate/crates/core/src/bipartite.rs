//! Bipartite systems: marginals, effective Hamiltonians, correlations and
//! the correlation temperature.

use serde::Serialize;

use crate::basis::{hamiltonian_unit, traceless_unit, TracelessUnit};
use crate::error::{Error, Result};
use crate::extended::ExtendedReal;
use crate::hermitian::{
    hs_inner, matrix_log, partial_trace, ClippedLog, Clip, CMatrix, DensityMatrix, HermitianOperator, Subsystem,
};
use crate::thermometry::von_neumann_entropy;

#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteSystem {
    d_s: usize,
    d_b: usize,
    h_s: HermitianOperator,
    h_b: HermitianOperator,
    h_i: HermitianOperator,
    rho_sb: DensityMatrix,
    rho_s: DensityMatrix,
    rho_b: DensityMatrix,
}

impl BipartiteSystem {
    pub fn new(
        h_s: HermitianOperator,
        h_b: HermitianOperator,
        h_i: HermitianOperator,
        rho_sb: DensityMatrix,
    ) -> Result<Self> {
        let (d_s, d_b) = (h_s.dim(), h_b.dim());
        let d = d_s
            .checked_mul(d_b)
            .ok_or_else(|| Error::DimensionMismatch("joint dimension overflows".into()))?;
        if h_i.dim() != d || rho_sb.dim() != d {
            return Err(Error::DimensionMismatch(format!(
                "local dims ({d_s}, {d_b}) need joint dim {d}, got H_I {} and rho_SB {}",
                h_i.dim(),
                rho_sb.dim()
            )));
        }
        let rho_s = DensityMatrix::new(partial_trace(rho_sb.matrix(), (d_s, d_b), Subsystem::S)?)?;
        let rho_b = DensityMatrix::new(partial_trace(rho_sb.matrix(), (d_s, d_b), Subsystem::B)?)?;
        Ok(BipartiteSystem { d_s, d_b, h_s, h_b, h_i, rho_sb, rho_s, rho_b })
    }

    /// Global Gibbs state of `H_S ⊗ 1 + 1 ⊗ H_B + H_I` at inverse temperature `beta`.
    pub fn thermal(
        h_s: HermitianOperator,
        h_b: HermitianOperator,
        h_i: HermitianOperator,
        beta: f64,
    ) -> Result<Self> {
        let h_sb = h_s
            .kron(&HermitianOperator::identity(h_b.dim()))?
            .add(&HermitianOperator::identity(h_s.dim()).kron(&h_b)?)?
            .add(&h_i)?;
        let rho = DensityMatrix::gibbs(&h_sb, beta)?;
        Self::new(h_s, h_b, h_i, rho)
    }

    /// Same Hamiltonians, different joint state.
    pub fn with_state(&self, rho_sb: DensityMatrix) -> Result<Self> {
        Self::new(self.h_s.clone(), self.h_b.clone(), self.h_i.clone(), rho_sb)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.d_s, self.d_b)
    }

    pub fn d_s(&self) -> usize {
        self.d_s
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    pub fn h_s(&self) -> &HermitianOperator {
        &self.h_s
    }

    pub fn h_b(&self) -> &HermitianOperator {
        &self.h_b
    }

    pub fn h_i(&self) -> &HermitianOperator {
        &self.h_i
    }

    pub fn rho_sb(&self) -> &DensityMatrix {
        &self.rho_sb
    }

    pub fn rho_s(&self) -> &DensityMatrix {
        &self.rho_s
    }

    pub fn rho_b(&self) -> &DensityMatrix {
        &self.rho_b
    }

    /// `A ⊗ 1_B`.
    pub fn embed_s(&self, a: &HermitianOperator) -> Result<HermitianOperator> {
        a.kron(&HermitianOperator::identity(self.d_b))
    }

    /// `1_S ⊗ A`.
    pub fn embed_b(&self, a: &HermitianOperator) -> Result<HermitianOperator> {
        HermitianOperator::identity(self.d_s).kron(a)
    }

    /// `H_S ⊗ 1 + 1 ⊗ H_B + H_I`.
    pub fn h_sb(&self) -> Result<HermitianOperator> {
        self.embed_s(&self.h_s)?.add(&self.embed_b(&self.h_b)?)?.add(&self.h_i)
    }

    pub fn product_of_marginals(&self) -> Result<DensityMatrix> {
        self.rho_s.kron(&self.rho_b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveHamiltonians {
    pub h_s_eff: HermitianOperator,
    pub h_b_eff: HermitianOperator,
    pub h_i_eff: HermitianOperator,
}

pub fn effective_hamiltonians(sys: &BipartiteSystem) -> Result<EffectiveHamiltonians> {
    let dims = sys.dims();
    let id_s = CMatrix::identity(sys.d_s, sys.d_s);
    let id_b = CMatrix::identity(sys.d_b, sys.d_b);
    let weight_b = crate::hermitian::tensor_product(&id_s, sys.rho_b.matrix())?;
    let weight_s = crate::hermitian::tensor_product(sys.rho_s.matrix(), &id_b)?;
    let shift_s = HermitianOperator::from_hermitian_part(partial_trace(
        &(&weight_b * sys.h_i.matrix()),
        dims,
        Subsystem::S,
    )?);
    let shift_b = HermitianOperator::from_hermitian_part(partial_trace(
        &(&weight_s * sys.h_i.matrix()),
        dims,
        Subsystem::B,
    )?);
    let mean = hs_inner(sys.product_of_marginals()?.operator(), &sys.h_i)?;
    let h_i_eff = sys
        .h_i
        .sub(&sys.embed_s(&shift_s)?)?
        .sub(&sys.embed_b(&shift_b)?)?
        .shift(mean);
    Ok(EffectiveHamiltonians {
        h_s_eff: sys.h_s.add(&shift_s)?,
        h_b_eff: sys.h_b.add(&shift_b)?,
        h_i_eff,
    })
}

/// `chi = rho_SB - rho_S ⊗ rho_B`.
pub fn correlation_operator(sys: &BipartiteSystem) -> Result<HermitianOperator> {
    sys.rho_sb.operator().sub(sys.product_of_marginals()?.operator())
}

/// `U_chi = Tr[chi H_I_eff]`.
pub fn binding_energy(sys: &BipartiteSystem) -> Result<f64> {
    let chi = correlation_operator(sys)?;
    hs_inner(&chi, &effective_hamiltonians(sys)?.h_i_eff)
}

/// `S(rho_S) + S(rho_B) - S(rho_SB)`, clamped at zero.
pub fn mutual_information(sys: &BipartiteSystem) -> f64 {
    let s = von_neumann_entropy(&sys.rho_s) + von_neumann_entropy(&sys.rho_b) - von_neumann_entropy(&sys.rho_sb);
    s.max(0.0)
}

/// `-log rho_SB + log rho_S ⊗ 1 + 1 ⊗ log rho_B`.
pub fn correlation_log_hamiltonian(sys: &BipartiteSystem, clip: Clip) -> Result<ClippedLog> {
    let joint = matrix_log(&sys.rho_sb, clip);
    let s = matrix_log(&sys.rho_s, clip);
    let b = matrix_log(&sys.rho_b, clip);
    let op = sys
        .embed_s(&s.op)?
        .add(&sys.embed_b(&b.op)?)?
        .sub(&joint.op)?;
    Ok(ClippedLog { op, clipped: joint.clipped || s.clipped || b.clipped })
}

/// Unit of the effective interaction, `(O_I, h_I)`.
pub fn interaction_unit(sys: &BipartiteSystem) -> Result<TracelessUnit> {
    let eff = effective_hamiltonians(sys)?;
    interaction_unit_from(&eff, sys)
}

fn interaction_unit_from(eff: &EffectiveHamiltonians, sys: &BipartiteSystem) -> Result<TracelessUnit> {
    traceless_unit(&eff.h_i_eff, sys.h_i.norm(), "effective interaction")
}

/// `O_chi` and the local units it is built against.
///
/// A local effective Hamiltonian proportional to the identity has no
/// direction; it is then absent and its overlap is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiUnit {
    pub op: HermitianOperator,
    pub h_chi: f64,
    pub o_s: Option<TracelessUnit>,
    pub o_b: Option<TracelessUnit>,
    /// `Tr[O_I (O_S ⊗ 1)]`.
    pub overlap_s: f64,
    /// `Tr[O_I (1 ⊗ O_B)]`.
    pub overlap_b: f64,
    pub o_i: TracelessUnit,
}

/// Floor on `h_chi` below which the interaction counts as local.
pub const H_CHI_FLOOR: f64 = 1e-10;

fn optional_unit(a: &HermitianOperator) -> Result<Option<TracelessUnit>> {
    match hamiltonian_unit(a) {
        Ok(u) => Ok(Some(u)),
        Err(Error::DegenerateDirection(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn chi_unit(sys: &BipartiteSystem) -> Result<ChiUnit> {
    let eff = effective_hamiltonians(sys)?;
    chi_unit_from(&eff, sys)
}

pub(crate) fn chi_unit_from(eff: &EffectiveHamiltonians, sys: &BipartiteSystem) -> Result<ChiUnit> {
    let o_i = interaction_unit_from(eff, sys)?;
    let o_s = optional_unit(&eff.h_s_eff)?;
    let o_b = optional_unit(&eff.h_b_eff)?;
    let (d_s, d_b) = (sys.d_s as f64, sys.d_b as f64);
    let mut op = o_i.op.clone();
    let mut overlap_s = 0.0;
    let mut overlap_b = 0.0;
    if let Some(u) = &o_s {
        let e = sys.embed_s(&u.op)?;
        overlap_s = hs_inner(&o_i.op, &e)?;
        op = op.axpy(-overlap_s / d_b, &e)?;
    }
    if let Some(u) = &o_b {
        let e = sys.embed_b(&u.op)?;
        overlap_b = hs_inner(&o_i.op, &e)?;
        op = op.axpy(-overlap_b / d_s, &e)?;
    }
    // equals sqrt(1 - a_S^2/d_B - a_B^2/d_S) without the cancellation
    let h_chi = op.norm();
    if h_chi <= H_CHI_FLOOR {
        return Err(Error::InteractionInLocalSpan { h_chi });
    }
    Ok(ChiUnit { op: op.scale(1.0 / h_chi), h_chi, o_s, o_b, overlap_s, overlap_b, o_i })
}

/// Projections of the correlation log-Hamiltonian onto the frame of a [`ChiUnit`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct CorrelationProjections {
    /// `Tr[O_I H_corr]`.
    pub on_i: f64,
    /// `Tr[(O_S ⊗ 1) H_corr]`.
    pub on_s: f64,
    /// `Tr[(1 ⊗ O_B) H_corr]`.
    pub on_b: f64,
}

impl CorrelationProjections {
    pub fn new(sys: &BipartiteSystem, unit: &ChiUnit, h_corr: &HermitianOperator) -> Result<Self> {
        let on_s = match &unit.o_s {
            Some(u) => hs_inner(&sys.embed_s(&u.op)?, h_corr)?,
            None => 0.0,
        };
        let on_b = match &unit.o_b {
            Some(u) => hs_inner(&sys.embed_b(&u.op)?, h_corr)?,
            None => 0.0,
        };
        Ok(CorrelationProjections { on_i: hs_inner(&unit.o_i.op, h_corr)?, on_s, on_b })
    }

    /// `Tr[O_I H_corr] - (a_S/d_B) Tr[(O_S⊗1) H_corr] - (a_B/d_S) Tr[(1⊗O_B) H_corr]`,
    /// which equals `h_chi Tr[O_chi H_corr]`.
    pub fn reduced(&self, sys: &BipartiteSystem, unit: &ChiUnit) -> f64 {
        self.on_i - unit.overlap_s * self.on_s / sys.d_b as f64 - unit.overlap_b * self.on_b / sys.d_s as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    #[serde(skip)]
    pub chi: HermitianOperator,
    pub u_chi: f64,
    pub s_chi: f64,
    pub beta_chi: ExtendedReal,
    pub h_i: f64,
    pub h_chi: f64,
    #[serde(skip)]
    pub o_i: HermitianOperator,
    #[serde(skip)]
    pub h_corr: HermitianOperator,
    pub overlap_s: f64,
    pub overlap_b: f64,
    pub clipped: bool,
}

/// `beta_chi = -(1/(h_I h_chi^2)) [Tr(H_corr O_I) - (a_S/d_B) Tr((O_S⊗1) H_corr) - (a_B/d_S) Tr((1⊗O_B) H_corr)]`
/// with `a_S = Tr[O_I (O_S⊗1)]`, `a_B = Tr[O_I (1⊗O_B)]`.
pub fn correlation_inverse_temperature(sys: &BipartiteSystem, clip: Clip) -> Result<CorrelationReport> {
    let eff = effective_hamiltonians(sys)?;
    let unit = chi_unit_from(&eff, sys)?;
    let h_corr = correlation_log_hamiltonian(sys, clip)?;
    let proj = CorrelationProjections::new(sys, &unit, &h_corr.op)?;
    let beta_chi = -proj.reduced(sys, &unit) / (unit.o_i.h * unit.h_chi * unit.h_chi);
    let chi = correlation_operator(sys)?;
    Ok(CorrelationReport {
        u_chi: hs_inner(&chi, &eff.h_i_eff)?,
        chi,
        s_chi: mutual_information(sys),
        beta_chi: ExtendedReal::from_f64(beta_chi),
        h_i: unit.o_i.h,
        h_chi: unit.h_chi,
        o_i: unit.o_i.op,
        h_corr: h_corr.op,
        overlap_s: unit.overlap_s,
        overlap_b: unit.overlap_b,
        clipped: h_corr.clipped,
    })
}
